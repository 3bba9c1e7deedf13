"""Fans of monoids, their lattices, decomposition and the fan product.

The image of the quasi-valuation is a union of finitely generated monoids,
one per maximal chain, glued along shared subchains.  This module carries the
lattice L^C fixed by the bonds, the lattice generated by any set of values,
bounded saturation certificates, indecomposables with ordered decompositions,
and the fan-algebra multiplication rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from stratval.avector import AVector, TotalOrder, degree_of
from stratval.errors import SchemaError, ValidationFailure
from stratval.intlattice import (
    hnf_basis,
    integer_kernel,
    rational_solve,
    solve_in_rowspace,
)
from stratval.poset import Chain, StratPoset


class LatticeQ:
    """Full- or partial-rank lattice in Q^chain, canonicalized by integer HNF."""

    def __init__(self, coords: Chain, vectors: list[AVector]):
        if not vectors:
            raise SchemaError("a lattice needs at least one generating vector")
        self.coords = tuple(coords)
        cset = set(self.coords)
        for v in vectors:
            if not v.support() <= cset:
                raise SchemaError(
                    f"vector {v} not supported in the coordinate chain {self.coords}"
                )
        self.den = lcm(
            1, *(x.denominator for v in vectors for x in v.entries.values())
        )
        rows = [[int(v[p] * self.den) for p in self.coords] for v in vectors]
        self._rows = hnf_basis(rows)
        self.basis = [
            AVector({p: Fraction(x, self.den) for p, x in zip(self.coords, row)})
            for row in self._rows
        ]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def membership(self, v: AVector) -> bool:
        if not v.support() <= set(self.coords):
            return False
        scaled = []
        for p in self.coords:
            x = v[p] * self.den
            if x.denominator != 1:
                return False
            scaled.append(int(x))
        return solve_in_rowspace(self._rows, scaled) is not None

    def kernel_of_functional(self, values: list[Fraction]) -> "LatticeQ":
        """Sublattice where the linear functional (given on self.basis) vanishes."""
        m = lcm(1, *(v.denominator for v in values))
        col = [[int(v * m)] for v in values]
        combos = integer_kernel(col)
        vecs = []
        for combo in combos:
            acc = AVector.zero()
            for c, b in zip(combo, self.basis):
                acc = acc + b.scale(c)
            vecs.append(acc)
        if not vecs:
            raise ValidationFailure("functional kernel is the zero lattice")
        return LatticeQ(self.coords, vecs)

    def kernel_of_degree(self, fdeg: dict[str, int]) -> "LatticeQ":
        return self.kernel_of_functional([degree_of(b, fdeg) for b in self.basis])

    def coords_in_basis(self, v: AVector) -> list[Fraction] | None:
        """Exact coordinates of v in self.basis, if v lies in the Q-span."""
        matrix = [[Fraction(b[p]) for p in self.coords] for b in self.basis]
        target = [Fraction(v[p]) for p in self.coords]
        return rational_solve(matrix, target)

    def to_json(self) -> dict:
        return {
            "coords": list(self.coords),
            "basis": [b.to_json() for b in self.basis],
        }


def lattice_LC(ps: StratPoset, chain: Chain) -> LatticeQ:
    """The bond lattice: e_{p_j} / (b_r ... b_j), including the bottom degree."""
    if chain not in ps.maximal_chains():
        raise SchemaError(f"{'>'.join(chain)} is not a maximal chain")
    bonds = ps.chain_bonds(chain)
    vecs = []
    running = 1
    for p, b in zip(chain, bonds):
        running *= b
        vecs.append(AVector.unit(p, Fraction(1, running)))
    return LatticeQ(chain, vecs)


def lattice_generated(vectors: list[AVector], chain: Chain | None = None) -> LatticeQ:
    """Z-span of valuation values supported in one chain."""
    if not vectors:
        raise SchemaError("lattice_generated needs at least one vector")
    if chain is None:
        support = sorted({p for v in vectors for p in v.support()})
        chain = tuple(support)
    return LatticeQ(chain, vectors)


@dataclass
class MonoidFan:
    """Per-chain generator lists for the monoids of the fan."""

    ps: StratPoset
    generators: dict[Chain, list[AVector]] = field(default_factory=dict)

    def __post_init__(self):
        for chain, gens in self.generators.items():
            for g in gens:
                if not g.support() <= set(chain):
                    raise SchemaError(f"generator {g} escapes its chain")
                if any(x < 0 for x in g.entries.values()):
                    raise SchemaError(f"generator {g} has a negative entry")

    def chains(self) -> list[Chain]:
        return sorted(self.generators)

    def to_json(self) -> dict:
        return {
            "schema": "stratval-fan/1",
            "chains": [
                {
                    "chain": list(chain),
                    "generators": [g.to_json() for g in gens],
                }
                for chain, gens in sorted(self.generators.items())
            ],
        }


@dataclass
class Core:
    """Nonnegative part of a chain-valuation monoid: an N^chain module, so it
    must absorb every unit vector of the chain; checked on the generators."""

    chain: Chain
    generators: list[AVector]

    def __post_init__(self):
        cset = set(self.chain)
        for g in self.generators:
            if not g.support() <= cset:
                raise SchemaError(f"core generator {g} escapes the chain")
            if any(x < 0 for x in g.entries.values()):
                raise SchemaError(f"core generator {g} has a negative entry")
        fdeg = {p: 1 for p in self.chain}
        for p in self.chain:
            if not monoid_membership(AVector.unit(p), self.generators, fdeg):
                raise SchemaError(
                    f"core is not closed under adding e[{p}]: unit not generated"
                )


def hodge_fan(ps: StratPoset) -> MonoidFan:
    """For all-bonds-one stratifications each chain monoid is N^chain."""
    bad = [(e, b) for e, b in ps.bond.items() if b != 1]
    for p in ps.minimal_elements():
        if ps.fdeg[p] != 1:
            bad.append(((p, "origin"), ps.fdeg[p]))
    if bad:
        raise ValidationFailure(f"not of Hodge type: bonds {sorted(bad)} differ from 1")
    return MonoidFan(
        ps, {c: [AVector.unit(p) for p in c] for c in ps.maximal_chains()}
    )


def _monoid_elements_up_to(
    gens: list[AVector], fdeg: dict[str, int], bound: Fraction
) -> set[AVector]:
    """All monoid elements of weighted degree <= bound (0 included)."""
    for g in gens:
        if degree_of(g, fdeg) <= 0:
            raise SchemaError(f"generator {g} has nonpositive degree")
    seen = {AVector.zero()}
    frontier = [AVector.zero()]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = v + g
                if w not in seen and degree_of(w, fdeg) <= bound:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def monoid_membership(
    target: AVector, gens: list[AVector], fdeg: dict[str, int]
) -> bool:
    """Bounded nonnegative-integer search, exact and terminating: generator
    degrees are positive so the target's degree bounds the search depth."""
    fail: set[tuple] = set()

    def search(v: AVector) -> bool:
        if v.is_zero():
            return True
        key = v.key()
        if key in fail:
            return False
        for g in gens:
            w = v - g
            if all(x >= 0 for x in w.entries.values()) and degree_of(w, fdeg) >= 0:
                if search(w):
                    return True
        fail.add(key)
        return False

    return search(target)


@dataclass
class SaturationReport:
    chain: Chain
    saturated: bool
    bound: int
    witness: AVector | None

    def __bool__(self) -> bool:
        return self.saturated


def is_saturated(
    fan: MonoidFan, chain: Chain, bound: int = 8
) -> SaturationReport:
    """Bounded certificate: every lattice point of the cone with degree <= bound
    lies in the generated monoid.  Honest about the bound; not a proof beyond it."""
    gens = fan.generators[chain]
    fdeg = fan.ps.fdeg
    lat = lattice_generated(gens, chain)
    den = lat.den
    fdegs = [fdeg[p] for p in chain]

    def enumerate_scaled(i: int, remaining: int, acc: list[int]):
        if i == len(chain):
            if remaining == 0:
                yield list(acc)
            return
        step = fdegs[i]
        for w in range(0, remaining // step + 1):
            acc.append(w)
            yield from enumerate_scaled(i + 1, remaining - w * step, acc)
            acc.pop()

    for total in range(0, bound * den + 1):
        for scaled in enumerate_scaled(0, total, []):
            v = AVector({p: Fraction(w, den) for p, w in zip(chain, scaled)})
            if v.is_zero():
                continue
            if lat.membership(v) and not monoid_membership(v, gens, fdeg):
                return SaturationReport(chain, False, bound, v)
    return SaturationReport(chain, True, bound, None)


def _supp_positions(v: AVector, chain: Chain) -> tuple[int, int]:
    """(position of max supp, position of min supp) in top-down chain indexing."""
    pos = [chain.index(p) for p in v.support()]
    return min(pos), max(pos)


def indecomposables(
    fan: MonoidFan, chain: Chain, max_degree: int
) -> list[AVector]:
    """Nonzero monoid elements of degree <= max_degree admitting no ordered split."""
    gens = fan.generators[chain]
    fdeg = fan.ps.fdeg
    elements = _monoid_elements_up_to(gens, fdeg, Fraction(max_degree))
    nonzero = sorted((v for v in elements if not v.is_zero()), key=AVector.key)
    out = []
    for a in nonzero:
        split = False
        for a1 in nonzero:
            a2 = a - a1
            if a2.is_zero() or any(x < 0 for x in a2.entries.values()):
                continue
            if a2 not in elements:
                continue
            _, min1 = _supp_positions(a1, chain)
            top2, _ = _supp_positions(a2, chain)
            if min1 <= top2:
                split = True
                break
        if not split:
            out.append(a)
    return out


def decompose(a: AVector, fan: MonoidFan, chain: Chain) -> list[AVector]:
    """Ordered decomposition into indecomposables, top factor first.

    Unique when the chain monoid is saturated; deterministic regardless.
    """
    gens = fan.generators[chain]
    fdeg = fan.ps.fdeg
    if a.is_zero():
        return []
    if not a.support() <= set(chain):
        raise SchemaError(f"{a} is not supported in the chain")
    if not monoid_membership(a, gens, fdeg):
        raise SchemaError(f"{a} is not an element of the chain monoid")
    total = degree_of(a, fdeg)
    indec = indecomposables(fan, chain, int(total))
    elements = _monoid_elements_up_to(gens, fdeg, total)

    def split(v: AVector, cap: int | None) -> list[AVector] | None:
        if v.is_zero():
            return []
        vtop, _ = _supp_positions(v, chain)
        for g in indec:
            gtop, gmin = _supp_positions(g, chain)
            if gtop != vtop:
                continue
            if cap is not None and gtop < cap:
                continue
            rem = v - g
            if any(x < 0 for x in rem.entries.values()):
                continue
            if rem not in elements:
                continue
            rest = split(rem, gmin)
            if rest is not None:
                return [g] + rest
        return None

    result = split(a, None)
    if result is None:
        raise SchemaError(f"{a} admits no ordered decomposition (incomplete fan?)")
    return result


def fan_mult(a: AVector, b: AVector, ps: StratPoset) -> AVector | None:
    """a + b when the supports fit a common chain, else None ('annihilated')."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    union = a.support() | b.support()
    if ps.chains_through(union):
        return a + b
    return None


def gamma_degree_slice(fan: MonoidFan, m: int) -> list[AVector]:
    """All fan elements of degree exactly m, deduplicated across chains."""
    if m < 0:
        raise SchemaError("degree slice needs m >= 0")
    fdeg = fan.ps.fdeg
    out: set[AVector] = set()
    for chain, gens in fan.generators.items():
        for v in _monoid_elements_up_to(gens, fdeg, Fraction(m)):
            if degree_of(v, fdeg) == m:
                out.add(v)
    return sorted(out, key=AVector.key)


@dataclass
class BalancedReport:
    regime: str                 # "full" or "sampled"
    orders_checked: int
    balanced: bool
    disagreements: list[str]


def length_compatible_orders(ps: StratPoset, limit: int):
    """All (or the first `limit`) total orders refining the partial order and
    listing longer elements first."""
    levels: dict[int, list[str]] = {}
    for p in ps.ids:
        levels.setdefault(ps.length(p), []).append(p)
    per_level = [sorted(levels[k]) for k in sorted(levels, reverse=True)]
    pools = [itertools.permutations(lv) for lv in per_level]
    count = 0
    for combo in itertools.product(*pools):
        ranked = [p for group in combo for p in group]
        order = TotalOrder(ranked)
        try:
            ps.check_total_order(order)
        except ValidationFailure:
            continue
        yield order
        count += 1
        if count >= limit:
            return


def balanced_report(ps: StratPoset, atlas, probes, limit: int = 720) -> BalancedReport:
    """Empirical balanced-ness: recompute quasi-valuations of the probe
    functions under every length-compatible total order (or a sample)."""
    from stratval.valuation import quasi_valuation

    levels: dict[int, int] = {}
    for p in ps.ids:
        levels[ps.length(p)] = levels.get(ps.length(p), 0) + 1
    total = 1
    for n in levels.values():
        for k in range(2, n + 1):
            total *= k
    regime = "full" if total <= limit else "sampled"
    baseline: list[AVector] | None = None
    checked = 0
    disagreements = []
    for order in length_compatible_orders(ps, limit):
        values = [quasi_valuation(g, atlas, ps, order) for g in probes]
        if baseline is None:
            baseline = values
        elif values != baseline:
            for g, a, b in zip(probes, baseline, values):
                if a != b:
                    disagreements.append(f"{g}: {a} vs {b}")
        checked += 1
    return BalancedReport(regime, checked, not disagreements, disagreements)
