from .sat import (
    Assignment,
    CnfFormula,
    IpInstance,
    assignment_to_partition,
    ip_target,
    normalize_cnf,
    partition_to_assignment,
    path_score_w,
    sat3_to_ip,
)
from .setcover import (
    CubicGraph,
    KipInstance,
    SetCoverInstance,
    canonicalize_kpaths,
    cover_to_kpaths,
    cubic_vc_to_setcover,
    kip_target,
    kpaths_to_cover,
    setcover_to_kip,
    vertex_cover_to_set_cover,
)

__all__ = [
    "Assignment",
    "CnfFormula",
    "CubicGraph",
    "IpInstance",
    "KipInstance",
    "SetCoverInstance",
    "assignment_to_partition",
    "canonicalize_kpaths",
    "cover_to_kpaths",
    "cubic_vc_to_setcover",
    "ip_target",
    "kip_target",
    "kpaths_to_cover",
    "normalize_cnf",
    "partition_to_assignment",
    "path_score_w",
    "sat3_to_ip",
    "setcover_to_kip",
    "vertex_cover_to_set_cover",
]
