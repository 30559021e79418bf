import math
import xml.etree.ElementTree as ET

import pytest

from omega_cloud import io
from omega_cloud.cli import main
from omega_cloud.cloud import maximal_cloud, omega_cloud
from omega_cloud.errors import OmegaCloudError
from omega_cloud.render import render_svg

NS = "{http://www.w3.org/2000/svg}"


def classes(svg):
    root = ET.fromstring(svg.encode())
    found = {}
    for el in root.iter():
        c = el.get("class")
        if c:
            found.setdefault(c, []).append(el.tag.replace(NS, ""))
    return found


def test_triangle_with_cloud(triangle):
    svg = render_svg([triangle, omega_cloud(triangle, math.pi / 2)])
    found = classes(svg)
    assert found["polygon"] == ["path"]
    assert len(found["arc"]) == 3
    assert len(found["pivot"]) == 3
    assert len(found["support"]) == 3


def test_polygon_only(square):
    found = classes(render_svg([square]))
    assert found == {"polygon": ["path"]}


def test_full_circle_has_no_pivots(hexagon):
    found = classes(render_svg([maximal_cloud(omega_cloud(hexagon, 5 * math.pi / 6))]))
    assert len(found["arc"]) == 1 and "pivot" not in found


def test_deterministic(triangle):
    c = omega_cloud(triangle, 1.0)
    assert render_svg([triangle, c]) == render_svg([triangle, c])


def test_nothing_to_render():
    with pytest.raises(OmegaCloudError):
        render_svg([])


def test_cli_render(tmp_path, triangle):
    pf = tmp_path / "p.json"
    cf = tmp_path / "c.json"
    io.save(pf, io.polygon_to_dict(triangle))
    io.save(cf, io.cloud_to_dict(omega_cloud(triangle, math.pi / 2)))
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["render", str(pf), str(cf), "--out", str(out1)]) == 0
    assert main(["render", str(pf), str(cf), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert len(classes(out1.read_text())["arc"]) == 3


def test_cli_render_empty_arcs(tmp_path, capsys):
    f = tmp_path / "e.json"
    f.write_text('{"format-version": 1, "omega": 1.0, "maximal": false, "arcs": []}')
    assert main(["render", str(f)]) == 2
