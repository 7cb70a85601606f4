"""Exact realisation counting for rigid graphs in the plane and on the sphere."""

from .graphs import (
    Cut2,
    Graph,
    IntegerCode,
    canonical_form,
    decode_integer,
    encode_integer,
    find_two_cuts,
    split_at_cut,
)
from .matroid import (
    LinkageMatrix,
    RankReport,
    RigidDecomposition,
    is_globally_rigid,
    is_minimally_rigid,
    is_redundantly_rigid,
    is_rigid,
    maximal_rigid_subgraphs,
    rank,
)

__all__ = [
    "Cut2",
    "Graph",
    "IntegerCode",
    "LinkageMatrix",
    "RankReport",
    "RigidDecomposition",
    "canonical_form",
    "decode_integer",
    "encode_integer",
    "find_two_cuts",
    "is_globally_rigid",
    "is_minimally_rigid",
    "is_redundantly_rigid",
    "is_rigid",
    "maximal_rigid_subgraphs",
    "rank",
    "split_at_cut",
]
