"""Exception types raised by the omega_cloud package."""


class OmegaCloudError(ValueError):
    """Base class for every error raised by this package."""

    code = "error"


class TooFewVertices(OmegaCloudError):
    code = "too_few_vertices"


class DuplicateVertices(OmegaCloudError):
    code = "duplicate_vertices"


class NotConvex(OmegaCloudError):
    code = "not_convex"


class DegeneratePolygon(OmegaCloudError):
    code = "degenerate_polygon"


class DegenerateChord(OmegaCloudError):
    code = "degenerate_chord"


class ApexNotOnCircle(OmegaCloudError):
    code = "apex_not_on_circle"


class ArmMissesCircle(OmegaCloudError):
    code = "arm_misses_circle"


class CoCircular(OmegaCloudError):
    code = "co_circular"


class PointNotShared(OmegaCloudError):
    code = "point_not_shared"


class TurnOutOfRange(OmegaCloudError):
    code = "turn_out_of_range"


class IdentityViolated(OmegaCloudError):
    code = "identity_violated"


class InvalidCloud(OmegaCloudError):
    code = "invalid_cloud"


class NonClosing(InvalidCloud):
    code = "non_closing"


class StrictNarrowEncountered(InvalidCloud):
    code = "strict_narrow_encountered"


class ContactOffCircle(InvalidCloud):
    code = "contact_off_circle"


class SingleCircleAmbiguous(OmegaCloudError):
    code = "single_circle_ambiguous"


class CertificationFailed(OmegaCloudError):
    code = "certification_failed"


class NotASegment(InvalidCloud):
    code = "not_a_segment"


class AmbiguousOmega(InvalidCloud):
    code = "ambiguous_omega"


class GenerationFailed(OmegaCloudError):
    code = "generation_failed"
