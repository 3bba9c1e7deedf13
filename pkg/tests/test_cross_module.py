"""Invariants that tie modules together: generated lattices sit inside the
bond lattice, the fan product associates, subduction works beyond the
Grassmannian, and the balanced sweep degrades to sampling."""

import json

import pytest

from stratval.avector import AVector
from stratval.laurent import LaurentPoly, parse_laurent
from stratval.monoids import (
    balanced_report,
    fan_mult,
    hodge_fan,
    lattice_LC,
    lattice_generated,
)
from stratval.valuation import quasi_valuation
from stratval.workspace import bundled, load_workspace


@pytest.mark.parametrize("name", ["gr24", "quadric", "pset_p2"])
def test_generated_lattice_inside_bond_lattice(name):
    ws = load_workspace(bundled(name))
    order = ws.order
    atlas = ws.require_atlas()
    names = sorted(next(iter(atlas.values())).ambient_map)
    for chain in ws.ps.maximal_chains():
        values = []
        for a in names:
            for b in names:
                v = quasi_valuation(
                    parse_laurent(f"{a}*{b}"), atlas, ws.ps, order
                )
                if v.support() <= set(chain):
                    values.append(v)
        gen = lattice_generated(values, chain)
        bond = lattice_LC(ws.ps, chain)
        for basis_vec in gen.basis:
            assert bond.membership(basis_vec), (name, chain, basis_vec)


def test_fan_mult_associative(gr24):
    units = [AVector.unit(p) for p in gr24.ids]

    def mul(x, y):
        if x is None or y is None:
            return None
        return fan_mult(x, y, gr24)

    for a in units:
        for b in units:
            for c in units:
                assert mul(mul(a, b), c) == mul(a, mul(b, c))


def test_balanced_report_sampled_regime():
    ws = load_workspace(bundled("pset_p2"))
    probes = [parse_laurent("x1*x2"), parse_laurent("x1*x2*x3")]
    rep = balanced_report(ws.ps, ws.require_atlas(), probes, limit=4)
    assert rep.regime == "sampled"
    assert rep.orders_checked == 4
    assert rep.balanced


def test_subduction_on_quadric():
    from stratval.smt import subduction

    ws = load_workspace(bundled("quadric"))
    ring = ws.require_ring()
    fan = hodge_fan(ws.ps)
    reps = ws.representatives()
    atlas = ws.require_atlas()
    # y*z = t*y + t*z is the straightening of the incomparable pair
    res = subduction(parse_laurent("y*z"), ring, atlas, fan, ws.ps, ws.order, reps)
    values = sorted(mono.value().key() for _, mono in res.terms)
    assert values == sorted(
        [
            (AVector.unit("X3") + AVector.unit("X2")).key(),
            (AVector.unit("X3") + AVector.unit("X1")).key(),
        ]
    )
    assert all(c == 1 for c, _ in res.terms)
    acc = LaurentPoly.zero()
    for c, mono in res.terms:
        acc = acc + reps.product(mono.factors).scale(c)
    assert ring.is_zero_in_quotient(parse_laurent("y*z") - acc)


def test_subduction_on_pset():
    from stratval.smt import subduction

    ws = load_workspace(bundled("pset_p2"))
    ring = ws.require_ring()
    fan = hodge_fan(ws.ps)
    reps = ws.representatives()
    atlas = ws.require_atlas()
    res = subduction(
        parse_laurent("x1^2*x2"), ring, atlas, fan, ws.ps, ws.order, reps
    )
    assert len(res.terms) == 1
    coeff, mono = res.terms[0]
    assert coeff == 1
    assert [f.support() for f in mono.factors] == [{"12"}, {"1"}]


def test_subduct_cli_error_paths(capsys, tmp_path):
    import shutil

    from stratval.cli import main

    # bonded data: no Hodge fan, computation failure
    code = main(["subduct", "-w", bundled("sl3b"), "--poly", "fe*f121"])
    assert code == 1
    # Hodge data without declared representatives: schema error
    target = tmp_path / "quadric"
    shutil.copytree(bundled("quadric"), target)
    ring_doc = json.loads((target / "ring.json").read_text())
    ring_doc.pop("representatives")
    (target / "ring.json").write_text(json.dumps(ring_doc))
    code = main(["subduct", "-w", str(target), "--poly", "y*z"])
    assert code == 2


def test_ls_fan_standard_monomials_count_weyl_modules():
    """Standard monomials in the degree-one path leaves enumerate a basis of
    each dilated Weyl module: the path model as standard monomial theory."""
    from stratval.monoids import MonoidFan
    from stratval.smt import standard_monomials
    from stratval.weyl import (
        RootSystem,
        bonds,
        ls_lattice_points,
        weyl_dim,
        weyl_group,
    )

    rs = RootSystem.from_type("A2")
    group = weyl_group(rs)
    ps = bonds(rs, (1, 1), group)
    fan = MonoidFan(
        ps,
        {
            chain: [v for v in ls_lattice_points(ps, chain, 1) if not v.is_zero()]
            for chain in ps.maximal_chains()
        },
    )
    for m in range(4):
        assert len(standard_monomials(ps, fan, m)) == weyl_dim(rs, (m, m)), m


def test_hilbert_cli_elliptic_shows_nonnormal_gap(capsys):
    """For the non-normal curve stratification the saturation count exceeds
    the true Hilbert function: the side-by-side table makes that visible."""
    from stratval.cli import main

    assert main(["hilbert", "-w", bundled("elliptic1"), "--max", "2"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()[2:]
    assert rows == ["0,1,1,1", "1,4,2,3", "2,7,3,6"]
