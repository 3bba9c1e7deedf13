"""Newton-Okounkov simplicial complexes, volumes, degrees, Hilbert counting.

The complex is the order complex of the poset realized with vertices
e_p / deg f_p.  Each maximal simplex gets a rational structure: projecting
away the bottom vertex and rewriting in a basis of the degree-zero sublattice
turns lattice-point counts into ordinary Z^r counts, which is where the
degree formula and the inclusion-exclusion Hilbert function live.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from stratval.avector import AVector
from stratval.errors import BoundError, SchemaError, ValidationFailure
from stratval.monoids import LatticeQ, MonoidFan, is_saturated, lattice_LC
from stratval.poset import Chain, StratPoset

EHRHART_GUARD = 10_000_000


@dataclass
class SimplexQ:
    chain: Chain
    vertices: list[AVector]   # e_p / deg f_p, top-down


@dataclass
class RationalStructure:
    chain: Chain
    lattice: LatticeQ
    sublattice: LatticeQ | None          # degree-zero part, rank r; None when r=0
    points: list[list[Fraction]]         # simplex vertices in Z^r coordinates


def no_complex(ps: StratPoset) -> list[SimplexQ]:
    """One maximal simplex per maximal chain; together they realize the
    order complex."""
    rep = ps.validate()
    if not rep.ok:
        raise ValidationFailure("; ".join(rep.failures))
    out = []
    for chain in ps.maximal_chains():
        verts = [AVector.unit(p, Fraction(1, ps.fdeg[p])) for p in chain]
        out.append(SimplexQ(chain, verts))
    return out


def complex_to_json(ps: StratPoset) -> dict:
    """Vertices and maximal faces of the Newton-Okounkov simplicial complex."""
    simplices = no_complex(ps)
    return {
        "schema": "stratval-complex/1",
        "vertices": [
            {"id": p, "point": AVector.unit(p, Fraction(1, ps.fdeg[p])).to_json()}
            for p in sorted(ps.ids)
        ],
        "maximal_faces": [list(s.chain) for s in simplices],
    }


def rational_structure(
    ps: StratPoset, chain: Chain, lattice: LatticeQ
) -> RationalStructure:
    """Project away the bottom vertex and rewrite in a degree-zero basis."""
    p0 = chain[-1]
    ell1 = AVector.unit(p0, Fraction(1, ps.fdeg[p0]))
    if not lattice.membership(ell1):
        raise ValidationFailure(
            f"e[{p0}]/{ps.fdeg[p0]} is not in the given lattice; "
            "rational structure undefined"
        )
    if len(chain) == 1:
        return RationalStructure(chain, lattice, None, [[]])
    sub = lattice.kernel_of_degree(ps.fdeg)
    r = len(chain) - 1
    if sub.rank != r:
        raise ValidationFailure(
            f"degree-zero sublattice has rank {sub.rank}, expected {r}"
        )
    points = []
    for p in chain:
        w = AVector.unit(p, Fraction(1, ps.fdeg[p])) - ell1
        coords = sub.coords_in_basis(w)
        if coords is None:
            raise ValidationFailure(f"vertex of {p} is not in the projected span")
        points.append(coords)
    return RationalStructure(chain, lattice, sub, points)


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def volume(rs: RationalStructure) -> Fraction:
    """Euclidean volume |det of edge matrix| / r!; a point has volume 1."""
    r = len(rs.chain) - 1
    if r == 0:
        return Fraction(1)
    base = rs.points[-1]
    edges = [[a - b for a, b in zip(pt, base)] for pt in rs.points[:-1]]
    d = _det(edges)
    if d == 0:
        raise ValidationFailure("degenerate simplex: zero volume")
    return abs(d) / factorial(r)


def degree(ps: StratPoset, lattices: dict[Chain, LatticeQ]) -> Fraction:
    """r! times the summed volumes of the projected simplexes."""
    r = ps.r
    total = Fraction(0)
    for chain in ps.maximal_chains():
        if chain not in lattices:
            raise SchemaError(f"no lattice given for chain {'>'.join(chain)}")
        total += volume(rational_structure(ps, chain, lattices[chain]))
    return factorial(r) * total


def default_lattices(ps: StratPoset) -> dict[Chain, LatticeQ]:
    return {c: lattice_LC(ps, c) for c in ps.maximal_chains()}


def hodge_degree(ps: StratPoset) -> Fraction:
    """Sum over maximal chains of 1 / (product of the extremal degrees)."""
    bad = [e for e, b in ps.bond.items() if b != 1]
    bad += [(p, "origin") for p in ps.minimal_elements() if ps.fdeg[p] != 1]
    if bad:
        raise ValidationFailure(f"not of Hodge type: nontrivial bonds {sorted(bad)}")
    total = Fraction(0)
    for chain in ps.maximal_chains():
        prod = 1
        for p in chain:
            prod *= ps.fdeg[p]
        total += Fraction(1, prod)
    return total


def ehrhart_count(rs: RationalStructure, n: int) -> int:
    """#(n * D_chain  intersect  Z^r) by exact enumeration over the bounding box."""
    if n < 0:
        raise SchemaError("ehrhart_count needs n >= 0")
    r = len(rs.chain) - 1
    if r == 0 or n == 0:
        return 1
    verts = [[n * x for x in pt] for pt in rs.points]
    lo = [min(v[j] for v in verts) for j in range(r)]
    hi = [max(v[j] for v in verts) for j in range(r)]
    ranges = []
    box = 1
    for j in range(r):
        a = -((-lo[j]).__floor__())  # ceil
        b = hi[j].__floor__()
        ranges.append(range(a, b + 1))
        box *= max(0, b - a + 1)
    if box > EHRHART_GUARD:
        raise BoundError(f"lattice-point enumeration over {box} candidates refused")
    # affine barycentric test: lambda = (x | 1) @ Minv, all >= 0
    mat = [list(v) + [Fraction(1)] for v in verts]
    inv = _invert(mat)
    count = 0

    def walk(j: int, point: list[int]):
        nonlocal count
        if j == r:
            lams = _affine_coords(point, inv)
            if all(l >= 0 for l in lams):
                count += 1
            return
        for x in ranges[j]:
            point.append(x)
            walk(j + 1, point)
            point.pop()

    walk(0, [])
    return count


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValidationFailure("degenerate simplex: affine matrix not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _affine_coords(point: list[int], inv: list[list[Fraction]]) -> list[Fraction]:
    n = len(inv)
    vec = list(point) + [1]
    return [sum(vec[i] * inv[i][j] for i in range(n)) for j in range(n)]


def count_face_points(
    ps: StratPoset, face: Chain, lattice: LatticeQ, n: int
) -> int:
    """#{v >= 0 supported in the face, deg v = n, v in the lattice}."""
    den = lattice.den
    fdegs = [ps.fdeg[p] for p in face]
    count = 0

    def walk(i: int, remaining: int, acc: list[int]):
        nonlocal count
        if i == len(face):
            if remaining == 0:
                v = AVector(
                    {p: Fraction(w, den) for p, w in zip(face, acc)}
                )
                if lattice.membership(v):
                    count += 1
            return
        step = fdegs[i]
        for w in range(0, remaining // step + 1):
            acc.append(w)
            walk(i + 1, remaining - w * step, acc)
            acc.pop()

    walk(0, n * den, [])
    return count


def hilbert_incl_excl(
    ps: StratPoset,
    lattices: dict[Chain, LatticeQ],
    n: int,
    fan: MonoidFan | None = None,
    saturation_bound: int = 8,
) -> int:
    """Alternating sum over chain subsets of shared-face lattice-point counts.

    Valid for normal (saturated) stratifications only; when a fan is supplied
    its chains are certified up to the bound first and the call refuses on a
    witness of non-saturation.
    """
    if n < 0:
        raise SchemaError("hilbert_incl_excl needs n >= 0")
    if fan is not None:
        for chain in fan.chains():
            rep = is_saturated(fan, chain, saturation_bound)
            if not rep.saturated:
                raise ValidationFailure(
                    f"chain {'>'.join(chain)} is not saturated "
                    f"(witness {rep.witness}); inclusion-exclusion refused"
                )
    chains = ps.maximal_chains()
    total = 0
    for mask in range(1, 1 << len(chains)):
        members = [chains[i] for i in range(len(chains)) if mask & (1 << i)]
        shared = set(members[0])
        for c in members[1:]:
            shared &= set(c)
        if not shared:
            continue
        face = tuple(p for p in members[0] if p in shared)
        cnt = count_face_points(ps, face, lattices[members[0]], n)
        total += cnt if len(members) % 2 == 1 else -cnt
    return total


def sr_hilbert(ps: StratPoset, n: int) -> int:
    """Hilbert function of the bond-free degeneration: monomials with chain
    support and weighted degree n (weights deg f_p)."""
    if n < 0:
        raise SchemaError("sr_hilbert needs n >= 0")
    if n == 0:
        return 1
    total = 0
    for face in ps.order_complex():
        total += _positive_compositions(n, [ps.fdeg[p] for p in face])
    return total


def _positive_compositions(n: int, weights: list[int]) -> int:
    if not weights:
        return 1 if n == 0 else 0
    w, rest = weights[0], weights[1:]
    return sum(
        _positive_compositions(n - k * w, rest) for k in range(1, n // w + 1)
    )
