"""Degreewise homology via exact linear algebra.

Homology dimensions are computed cell by cell: for each cohomological
degree i and internal degree d, two ranks over Q determine
dim H^i(C)_d = dim(C^i)_d - rank(d^i)_d - rank(d^{i-1})_d.  There is no
global normal form; cells are independent, so a table can be filled by
any number of workers and assembled deterministically.

Agreement of two tables up to a cutoff is this package's certificate of
quasi-isomorphism; it is a statement about dimensions only, and the
regularity check is likewise only conclusive up to its cutoff.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .complexes import Complex
from .polyalg import RingMismatch, matrix_rank_in_degree
from .zerolocus import ZeroLocusPresentation, koszul_complex

__all__ = [
    "HilbertTable",
    "DimComparison",
    "RegularityVerdict",
    "homology_dimensions",
    "same_homology_dims",
    "is_regular_up_to",
    "default_cutoff",
    "euler_characteristics_match",
]


@dataclass(frozen=True)
class HilbertTable:
    """dim H^i(C)_d for 0 <= d <= cutoff; absent entries are zero."""

    cutoff: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def dim(self, i: int, d: int) -> int:
        return self.entries.get((i, d), 0)

    def rows(self) -> list[tuple[int, int, int]]:
        """Sorted (i, d, dim) triples with nonzero dimension."""
        return sorted((i, d, n) for (i, d), n in self.entries.items())

    def cohomological_degrees(self) -> list[int]:
        return sorted({i for i, _ in self.entries})

    def __eq__(self, other):
        if not isinstance(other, HilbertTable):
            return NotImplemented
        return self.cutoff == other.cutoff and self.entries == other.entries


@dataclass(frozen=True)
class DimComparison:
    """Result of comparing two tables; `witness` is the first (i, d, dim_a, dim_b) mismatch."""

    passed: bool
    witness: Optional[tuple[int, int, int, int]]
    table_a: HilbertTable
    table_b: HilbertTable


@dataclass(frozen=True)
class RegularityVerdict:
    """REGULAR_UP_TO_CUTOFF or NON_REGULAR with a witness (i, d, dim).

    A passing verdict is not a proof of regularity: homology may first
    appear above the cutoff.
    """

    regular_up_to_cutoff: bool
    cutoff: int
    witness: Optional[tuple[int, int, int]]

    def __str__(self):
        if self.regular_up_to_cutoff:
            return f"REGULAR_UP_TO_CUTOFF({self.cutoff})"
        return f"NON_REGULAR(witness={self.witness})"


def default_cutoff(p: ZeroLocusPresentation) -> int:
    """Heuristic default: twice the sum of all declared degrees."""
    return 2 * sum(p.all_degrees)


def homology_dimensions(c: Complex, cutoff: int, threads: int = 1) -> HilbertTable:
    """Exact homology dimensions for all internal degrees <= cutoff."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    support = c.support
    if not support:
        return HilbertTable(cutoff, {})
    degrees = range(cutoff + 1)
    jobs = [(i, d) for i in set(c.differentials) for d in degrees]

    def rank_cell(job):
        i, d = job
        return job, matrix_rank_in_degree(c.differentials[i], d)

    if threads == 1 or len(jobs) < 2:
        ranks = dict(rank_cell(job) for job in jobs)
    else:
        workers = threads if threads > 0 else None
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = dict(pool.map(rank_cell, jobs))

    entries = {}
    for i in support:
        for d in degrees:
            dim_term = c.term(i).graded_dim(d)
            if dim_term == 0:
                continue
            out_rank = ranks.get((i, d), 0)
            in_rank = ranks.get((i - 1, d), 0)
            h = dim_term - out_rank - in_rank
            if h:
                entries[(i, d)] = h
    return HilbertTable(cutoff, entries)


def compare_tables(a: HilbertTable, b: HilbertTable) -> Optional[tuple[int, int, int, int]]:
    """First (i, d, dim_a, dim_b) disagreement in lexicographic order, or None."""
    keys = sorted(set(a.entries) | set(b.entries))
    for i, d in keys:
        da, db = a.dim(i, d), b.dim(i, d)
        if da != db:
            return (i, d, da, db)
    return None


def same_homology_dims(a: Complex, b: Complex, cutoff: int, threads: int = 1) -> DimComparison:
    """PASS when the homology tables agree everywhere up to the cutoff."""
    if a.ring != b.ring:
        raise RingMismatch("comparing complexes over different rings")
    table_a = homology_dimensions(a, cutoff, threads=threads)
    table_b = homology_dimensions(b, cutoff, threads=threads)
    witness = compare_tables(table_a, table_b)
    return DimComparison(witness is None, witness, table_a, table_b)


def is_regular_up_to(p: ZeroLocusPresentation, cutoff: int) -> RegularityVerdict:
    """Koszul criterion up to a cutoff: negative homology witnesses non-regularity."""
    table = homology_dimensions(koszul_complex(p), cutoff)
    for i, d, n in table.rows():
        if i < 0:
            return RegularityVerdict(False, cutoff, (i, d, n))
    return RegularityVerdict(True, cutoff, None)


def euler_characteristics_match(c: Complex, cutoff: int) -> bool:
    """Degreewise Euler characteristic of homology equals that of the terms."""
    table = homology_dimensions(c, cutoff)
    for d in range(cutoff + 1):
        chi_terms = sum((-1) ** (i % 2) * c.term(i).graded_dim(d) for i in c.support)
        chi_homology = sum((-1) ** (i % 2) * table.dim(i, d) for i in table.cohomological_degrees())
        if chi_terms != chi_homology:
            return False
    return True
