"""Per-chain Laurent coordinate charts.

A chart models a dense open torus in the top stratum's affine cone, chosen so
that each stratum of the chain is reached by setting one divisor variable to
zero, in top-down order.  The vanishing order of a function along the k-th
divisor is then the minimal exponent of the k-th divisor variable after the
outer restrictions, which is what makes every valuation computation exact.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from stratval.errors import ChartError, SchemaError
from stratval.laurent import LaurentPoly, parse_laurent
from stratval.poset import Chain, StratPoset


@dataclass
class ChainChart:
    chain: Chain
    divisor_vars: list[str]          # t_r, ..., t_1 top-down
    extra_vars: list[str]            # cone coordinate first
    f_exprs: dict[str, LaurentPoly]  # extremal functions on this chart
    ambient_map: dict[str, LaurentPoly]
    # absolute order bound per variable for truncated-series charts; computed
    # vanishing orders beyond it are refused rather than trusted
    order_limits: dict[str, int] | None = None

    @property
    def cone_var(self) -> str:
        return self.extra_vars[0]

    def check_order(self, var: str, nu: int) -> None:
        if self.order_limits and abs(nu) > self.order_limits.get(var, abs(nu)):
            raise ChartError(
                f"order {nu} along {var} exceeds the chart's faithful range "
                f"{self.order_limits[var]}; truncated data cannot decide it"
            )

    def restricted_chain_functions(self, ps: StratPoset) -> list[LaurentPoly]:
        """f_{p_k} restricted through the outer divisor variables, for each k.

        Checks on the way that f_{p_k} has order 0 along every outer divisor
        (it must not vanish identically on any intermediate stratum).
        """
        out = []
        for k, p in enumerate(self.chain):
            if p not in self.f_exprs:
                raise ChartError(f"chart for {self.chain} lacks f_expr of {p!r}")
            f = self.f_exprs[p]
            for var in self.divisor_vars[:k]:
                if f.min_exponent(var) != 0:
                    raise ChartError(
                        f"f[{p}] has order {f.min_exponent(var)} along {var}; "
                        "expected 0 above its own level"
                    )
                f = f.lowest_part(var)
            out.append(f)
        return out

    def check_bonds(self, ps: StratPoset) -> None:
        """The defining property of the chart: divisor orders match the bonds."""
        r = len(self.chain) - 1
        if len(self.divisor_vars) != r:
            raise ChartError(
                f"chart for {self.chain}: {len(self.divisor_vars)} divisor vars "
                f"for a chain of length {r}"
            )
        if not self.extra_vars:
            raise ChartError("chart needs a cone coordinate in extra_vars")
        bonds = ps.chain_bonds(self.chain)
        fs = self.restricted_chain_functions(ps)
        for k in range(r):
            got = fs[k].min_exponent(self.divisor_vars[k])
            if got != bonds[k]:
                raise ChartError(
                    f"chart for {self.chain}: f[{self.chain[k]}] has order {got} "
                    f"along {self.divisor_vars[k]}, bond says {bonds[k]}"
                )
        bottom = fs[r]
        leftover = bottom.variables() - {self.cone_var}
        if leftover:
            raise ChartError(
                f"f[{self.chain[r]}] restricts to extra variables {sorted(leftover)}"
            )
        got = bottom.min_exponent(self.cone_var)
        if got != bonds[r]:
            raise ChartError(
                f"f[{self.chain[r]}] has cone order {got}, degree says {bonds[r]}"
            )

    @staticmethod
    def from_json(doc: dict) -> "ChainChart":
        try:
            limits = doc.get("order_limits")
            return ChainChart(
                chain=tuple(doc["chain"]),
                divisor_vars=list(doc["divisor_vars"]),
                extra_vars=list(doc["extra_vars"]),
                f_exprs={k: parse_laurent(v) for k, v in doc["f_exprs"].items()},
                ambient_map={
                    k: parse_laurent(v) for k, v in doc["ambient_map"].items()
                },
                order_limits={k: int(v) for k, v in limits.items()} if limits else None,
            )
        except (KeyError, TypeError) as e:
            raise SchemaError(f"bad chart document: {e}") from None

    def to_json(self) -> dict:
        doc = {
            "schema": "stratval-chart/1",
            "chain": list(self.chain),
            "divisor_vars": self.divisor_vars,
            "extra_vars": self.extra_vars,
            "f_exprs": {k: str(v) for k, v in sorted(self.f_exprs.items())},
            "ambient_map": {k: str(v) for k, v in sorted(self.ambient_map.items())},
        }
        if self.order_limits:
            doc["order_limits"] = dict(sorted(self.order_limits.items()))
        return doc


Atlas = dict[Chain, ChainChart]


def load_atlas(path: str, ps: StratPoset, require_all: bool = False) -> Atlas:
    """Load every chart json under a directory and verify the bond invariant."""
    atlas: Atlas = {}
    for name in sorted(os.listdir(path)):
        if not name.endswith(".json"):
            continue
        with open(os.path.join(path, name)) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as e:
                raise SchemaError(f"{name}: {e}") from None
        chart = ChainChart.from_json(doc)
        chart.check_bonds(ps)
        atlas[chart.chain] = chart
    if require_all:
        missing = [c for c in ps.maximal_chains() if c not in atlas]
        if missing:
            raise SchemaError(f"atlas lacks charts for chains {missing}")
    return atlas
