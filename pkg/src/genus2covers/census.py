"""Exhaustive census of inputs (E, E', sigma) over a prime field.

Inputs are ordered triples of distinct field elements for each curve and all
six sigma, enumerated in a fixed lexicographic order.
"""

from __future__ import annotations

import csv
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ellcurve import EllCurve, TwoTorsionIso, j_invariant
from .errors import UnsupportedRing
from .exactring import Poly, PrimeField, RingElem
from .glueconstruct.construct import construct, theta_smooth

CSV_HEADER = ("e1", "e2", "e3", "ep1", "ep2", "ep3", "sigma", "j", "jp", "theta_smooth", "sextic")


@dataclass(frozen=True)
class CensusRow:
    E: EllCurve
    Ep: EllCurve
    psi: TwoTorsionIso
    j: RingElem
    jp: RingElem
    theta_smooth: bool
    sextic: Poly | None = None

    def as_csv(self) -> list:
        return [
            *(str(x) for x in self.E.e),
            *(str(x) for x in self.Ep.e),
            str(self.psi),
            str(self.j),
            str(self.jp),
            "true" if self.theta_smooth else "false",
            self.sextic.format("t") if self.sextic is not None else "",
        ]


def curves(K) -> list:
    """Every ordered triple of distinct elements of K, as a curve."""
    if not isinstance(K, PrimeField):
        raise UnsupportedRing(f"the census runs over prime fields, got {K.descriptor}")
    return [EllCurve(t) for t in itertools.permutations(list(K.elements()), 3)]


def census_inputs(K):
    cs = curves(K)
    sigmas = TwoTorsionIso.all()
    for E in cs:
        for Ep in cs:
            for psi in sigmas:
                yield E, Ep, psi


def census_size(p: int) -> int:
    return (p * (p - 1) * (p - 2)) ** 2 * 6


def _rows_for(E: EllCurve, cs, js, with_sextic: bool) -> list:
    j = j_invariant(E)
    rows = []
    for Ep, jp in zip(cs, js):
        for psi in TwoTorsionIso.all():
            smooth = theta_smooth(E, Ep, psi)
            sextic = construct(E, Ep, psi).sextic if smooth and with_sextic else None
            rows.append(CensusRow(E, Ep, psi, j, jp, smooth, sextic))
    return rows


def _chunk(args):
    p, index, with_sextic = args
    from .exactring import GF

    cs = curves(GF(p))
    js = [j_invariant(c) for c in cs]
    return _rows_for(cs[index], cs, js, with_sextic)


def census(K, with_sextic: bool = False, workers: int = 1):
    """Yield one :class:`CensusRow` per input, in input order whatever ``workers`` is."""
    cs = curves(K)
    js = [j_invariant(c) for c in cs]
    if workers <= 1:
        for E in cs:
            yield from _rows_for(E, cs, js, with_sextic)
        return
    jobs = [(K.p, i, with_sextic) for i in range(len(cs))]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for rows in pool.map(_chunk, jobs, chunksize=4):
            yield from rows


def j_implication_violations(rows) -> list:
    """Rows with ``j != j'`` that are not theta-smooth (there should be none)."""
    return [r for r in rows if r.j != r.jp and not r.theta_smooth]


def write_csv(rows, stream) -> int:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    n = 0
    for r in rows:
        w.writerow(r.as_csv())
        n += 1
    return n
