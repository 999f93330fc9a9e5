"""Named reference checks over published values.

Each check recomputes a quantity from scratch and compares it with the
value recorded here.  The CLI prints the table; the test suite asserts
every row.  Checks are pure and independent, so order never matters.
"""

from dataclasses import dataclass
from math import comb
from typing import Callable

from . import bounds, catalog, handles, reeb
from .presentations import (
    abelianize,
    circle_bundle,
    deficiency,
    free_product,
    heegaard_presentation,
    lens,
)
from .words import cyclically_equal


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    run: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    ok: bool
    detail: str


def _eq(got, want) -> tuple[bool, str]:
    return got == want, f"got {got!r}, want {want!r}"


def _all(pairs) -> tuple[bool, str]:
    pairs = list(pairs)
    bad = [f"{label}: got {got!r}, want {want!r}" for label, got, want in pairs if got != want]
    if bad:
        return False, "; ".join(bad)
    return True, f"{len(pairs)} comparisons agree"


# --- presentations ---------------------------------------------------------

def _deficiency_bundle():
    p = circle_bundle(1, 2)
    return _all([
        ("generators", p.rank, 3),
        ("relators", p.relator_count, 3),
        ("deficiency", deficiency(p), 0),
    ])


def _abelianize_bundle():
    rows = []
    for g in (1, 2, 3):
        for e in (-3, -1, 0, 1, 2, 5):
            inv = abelianize(circle_bundle(g, e))
            rows.append((f"g={g},e={e} free", inv.free_rank, 2 * g + (1 if e == 0 else 0)))
            want_torsion = (abs(e),) if abs(e) >= 2 else ()
            rows.append((f"g={g},e={e} torsion", inv.torsion, want_torsion))
    return _all(rows)


def _abelianize_lens_product():
    rows = []
    for p, q in ((2, 3), (3, 5), (2, 7)):
        inv = abelianize(free_product(lens(p), lens(q)))
        rows.append((f"({p},{q}) torsion", inv.torsion, (p * q,)))
        rows.append((f"({p},{q}) free", inv.free_rank, 0))
    return _all(rows)


def _abelianize_three_torus():
    inv = abelianize(circle_bundle(1, 0))
    return _all([
        ("free rank", inv.free_rank, 3),
        ("torsion", inv.torsion, ()),
        ("middle ranks of t3", tuple(comb(3, k) for k in (1, 2)), (3, 3)),
    ])


def _heegaard_matches_bundle():
    target = circle_bundle(1, -1)
    built = heegaard_presentation(
        3,
        ("[a1, h]", "[b1, h]", "[a1, b1] h"),
        generators=("a1", "b1", "h"),
    )
    if built.alpha != target.alpha:
        return False, "alphabets differ"
    if built.relator_count != target.relator_count:
        return False, "relator counts differ"
    for i, (r1, r2) in enumerate(zip(built.relators, target.relators)):
        if not cyclically_equal(r1, r2):
            return False, f"relator {i} differs: {r1.letters} vs {r2.letters}"
    return True, "3 relators agree cyclically"


# --- reeb graphs -----------------------------------------------------------

def _loop_graph_cycle_rank():
    g = handles.run(handles.s2xs1()).graph
    return _eq(reeb.cycle_rank(g), 1)


def _bundle_graph_cycle_rank():
    g = handles.run(handles.circle_bundle_seq(2, -1)).graph
    return _eq(reeb.cycle_rank(g), 2)


def _ordered_census():
    rows = []
    for g in (1, 2, 3, 4):
        c = handles.run(handles.ordered(g)).census
        rows.append((f"g={g} delta2", c.delta2, 2 * g))
        rows.append((f"g={g} delta3", c.delta3, 0))
        rows.append((f"g={g} tree", handles.run(handles.ordered(g)).graph.edge_count, 2 * g + 1))
    return _all(rows)


def _bundle_census():
    rows = []
    for g in (1, 2, 3):
        c = handles.run(handles.circle_bundle_seq(g, 2)).census
        rows.append((f"g={g} delta2", c.delta2, 2 * g + 2))
        rows.append((f"g={g} delta3", c.delta3, 2 * g))
    return _all(rows)


def _betti_identity_bundle():
    rows = []
    for g in (1, 2, 3, 4):
        res = handles.run(handles.circle_bundle_seq(g, -1))
        chk = reeb.betti_identity_check(res.graph)
        rows.append((f"g={g} identity", chk.ok, True))
        rows.append((f"g={g} value", chk.cycle_rank, g))
        rows.append((f"g={g} k0", res.census.k(0), 1))
        rows.append((f"g={g} k3", res.census.k(3), 1))
    return _all(rows)


def _parity_closed():
    seqs = {
        "ordered(3)": handles.ordered(3),
        "s2xs1": handles.s2xs1(),
        "bundle(2,1)": handles.circle_bundle_seq(2, 1),
        "canonical(4,2)": handles.canonical_sequence(4, 2),
    }
    rows = []
    for label, seq in seqs.items():
        g = handles.run(seq).graph
        rows.append((label + " even", reeb.census(g).delta2 % 2, 0))
        rows.append((label + " parity", reeb.parity_check(g, 0), True))
    return _all(rows)


def _parity_surface():
    torus_graph = reeb.ReebGraph(2, (0, 1, 1, 2), ((0, 1), (1, 2), (1, 2), (2, 3)))
    odd = reeb.ReebGraph(2, (0, 1, 2), ((0, 1), (1, 2)))
    return _all([
        ("chi 0 graph", reeb.census(torus_graph).delta2 % 2, 0 % 2),
        ("chi 0 parity", reeb.parity_check(torus_graph, 0), True),
        ("chi 1 graph", reeb.census(odd).delta2 % 2, 1 % 2),
        ("chi 1 parity", reeb.parity_check(odd, 1), True),
    ])


def _canonical_pattern():
    seq = handles.HandleSequence((
        handles.h0(),
        handles.split(1, 0, 0),
        handles.add_genus(2),
        handles.merge(2, 3),
        handles.drop_genus(4),
        handles.h3(4),
    ))
    g = handles.run(seq).graph
    canon = reeb.canonical_form(g)
    return _all([
        ("pattern", canon.indices, (0, 1, 2, 1, 2, 3)),
        ("cycle rank kept", reeb.cycle_rank(canon), reeb.cycle_rank(g)),
        ("census kept", reeb.census(canon).degree_counts, reeb.census(g).degree_counts),
    ])


def _obstruction_cases():
    profile = catalog.get_profile("circle-bundle-g2-e2")
    too_many_loops = handles.run(handles.canonical_sequence(3, 3)).graph
    fits = handles.run(handles.circle_bundle_seq(2, 2)).graph
    r1 = reeb.realization_obstruction(too_many_loops, profile)
    r2 = reeb.realization_obstruction(fits, profile)
    return _all([
        ("excess loops", r1.status, "obstructed"),
        ("matching graph", r2.status, "not-obstructed"),
    ])


# --- handle sequences ------------------------------------------------------

def _s2xs1_shape():
    res = handles.run(handles.s2xs1())
    return _all([
        ("indices", res.graph.indices, (0, 2, 1, 3)),
        ("beta1", reeb.cycle_rank(res.graph), 1),
        ("delta2", res.census.delta2, 0),
    ])


def _bundle_full_census():
    rows = []
    for g in range(1, 7):
        res = handles.run(handles.circle_bundle_seq(g, -1))
        c = res.census
        rows.append((f"g={g} k1", c.k(1), 2 * g + 1))
        rows.append((f"g={g} k2", c.k(2), 2 * g + 1))
        rows.append((f"g={g} delta3", c.delta3, 2 * g))
        rows.append((f"g={g} delta2", c.delta2, 2 * g + 2))
        rows.append((f"g={g} beta1", reeb.cycle_rank(res.graph), g))
    return _all(rows)


def _canonical_sequence_delta():
    rows = []
    for k1 in range(0, 7):
        for r in range(0, k1 + 1):
            c = handles.run(handles.canonical_sequence(k1, r)).census
            rows.append((f"({k1},{r})", c.delta2, 2 * (k1 - r)))
    return _all(rows)


def _sum_of_loops():
    seq = handles.connected_sum(handles.s2xs1(), handles.s2xs1())
    res = handles.run(seq)
    return _all([
        ("beta1", reeb.cycle_rank(res.graph), 2),
        ("delta2", res.census.delta2, 0),
    ])


def _bundle_g1():
    rows = []
    for e in (1, -1):
        res = handles.run(handles.circle_bundle_seq(1, e))
        rows.append((f"e={e} beta1", reeb.cycle_rank(res.graph), 1))
        rows.append((f"e={e} delta2", res.census.delta2, 4))
        rows.append((f"e={e} k1", res.census.k(1), 3))
    return _all(rows)


# --- bounds and catalog ----------------------------------------------------

def _lens_pair_bound():
    p = catalog.get_profile("lens2+lens3")
    return _all([
        ("rank", p.pi1_rank, 2),
        ("corank", p.pi1_corank, 0),
        ("bound", bounds.bound_rank_corank(p), 4),
        ("estimate lower", bounds.estimate(p).lower, 4),
    ])


def _surface_product_bound():
    rows = []
    for g in (2, 3):
        p = catalog.get_profile(f"sigma{g}xs2")
        rows.append((f"g={g}", bounds.bound_rank_corank(p) >= 2 * g, True))
    return _all(rows)


def _torus_homology_bound():
    rows = []
    for n in (3, 4, 5, 6):
        p = catalog.get_profile(f"t{n}")
        rows.append((f"n={n} bound", bounds.bound_homology(p, "Z"), 2 ** n - 4))
        rows.append((f"n={n} ranks", p.homology("Z"), tuple(comb(n, k) for k in range(1, n))))
        rows.append((f"n={n} corank", p.pi1_corank, 1))
    return _all(rows)


def _homology_sphere_bounds():
    p = catalog.get_profile("homology-sphere-g3")
    est = bounds.estimate(p)
    return _all([
        ("homology bound", bounds.bound_homology(p, "Z"), 0),
        ("category bound", bounds.bound_category(p), 2),
        ("exact", (est.exact, est.lower, est.upper), (True, 6, 6)),
    ])


def _projective_category_bounds():
    rows = []
    for n in range(3, 9):
        rp = catalog.get_profile(f"rp{n}")
        cp = catalog.get_profile(f"cp{n}")
        rows.append((f"rp{n}", bounds.bound_category(rp), n - 1))
        rows.append((f"rp{n} lower", bounds.estimate(rp).lower >= n - 1, True))
        rows.append((f"cp{n}", bounds.bound_category(cp), n - 1))
        rows.append((f"cp{n} lower", bounds.estimate(cp).lower >= n - 1, True))
    return _all(rows)


def _genus_bounds_exact():
    rows = []
    for g in (1, 2, 3, 4):
        p = catalog.get_profile(f"circle-bundle-g{g}-e2")
        est = bounds.estimate(p)
        rows.append((f"e=2 g={g} heegaard", bounds.bound_heegaard(p), 2 * g + 2))
        rows.append((f"e=2 g={g} exact", (est.exact, est.lower), (True, 2 * g + 2)))
    for g in (2, 3, 4, 5):
        p = catalog.get_profile(f"homology-sphere-g{g}")
        est = bounds.estimate(p)
        rows.append((f"hs g={g}", (est.exact, est.lower, est.upper), (True, 2 * g, 2 * g)))
    for r in (2, 3, 4):
        p = catalog.get_profile(f"s2xs1-sum{r}")
        rows.append((f"sum{r} heegaard", bounds.bound_heegaard(p), 0))
    return _all(rows)


def _heisenberg_estimate():
    p = catalog.get_profile("heisenberg")
    est = bounds.estimate(p)
    return _all([
        ("omega bound", bounds.bound_omega(p), 4),
        ("estimate", (est.exact, est.lower, est.upper), (True, 4, 4)),
    ])


def _unit_twist_intervals():
    rows = []
    for g in (2, 3, 4):
        for e in (1, -1):
            est = bounds.estimate(catalog.get_profile(f"circle-bundle-g{g}-e{e}"))
            rows.append((f"g={g},e={e}", (est.lower, est.upper, est.exact),
                         (max(2 * g, 4), 2 * g + 2, False)))
    return _all(rows)


def _classified_sums():
    three_plus_lens = bounds.connected_sum(catalog.s2xs1_sum(3), catalog.lens_profile(5))
    est1 = bounds.estimate(three_plus_lens)
    est2 = bounds.estimate(bounds.connected_sum(catalog.s2xs1_profile(), catalog.s2xs1_profile()))
    return _all([
        ("with lens", (est1.exact, est1.lower), (True, 2)),
        ("without", (est2.exact, est2.lower), (True, 0)),
    ])


def _catalog_bundle_fields():
    rows = []
    for g in (1, 2, 3, 4):
        p2 = catalog.get_profile(f"circle-bundle-g{g}-e2")
        rows.append((f"e=2 g={g} rank", p2.pi1_rank, 2 * g + 1))
        rows.append((f"e=2 g={g} corank", p2.pi1_corank, g))
        rows.append((f"e=2 g={g} genus", p2.heegaard_genus, 2 * g + 1))
        p1 = catalog.get_profile(f"circle-bundle-g{g}-e1")
        rows.append((f"e=1 g={g} rank", p1.pi1_rank, 2 * g))
        rows.append((f"e=1 g={g} genus", p1.heegaard_genus, 2 * g))
    return _all(rows)


def _cli_simulate_dot():
    import contextlib
    import io

    from . import cli

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        status = cli.main(["simulate", "--builder", "circle-bundle", "--g", "2", "--e", "-1", "--dot"])
    out = buf.getvalue()
    res = handles.run(handles.circle_bundle_seq(2, -1))
    return _all([
        ("exit", status, 0),
        ("dot payload", reeb.to_dot(res.graph) in out, True),
        ("beta1", reeb.cycle_rank(res.graph), 2),
        ("delta2", res.census.delta2, 6),
    ])


def all_checks() -> tuple[Check, ...]:
    return (
        Check("presentations/deficiency-zero-bundle",
              "3-generator 3-relator circle-bundle presentation has deficiency 0",
              _deficiency_bundle),
        Check("presentations/abelianize-circle-bundles",
              "circle bundle abelianizations: rank 2g plus cyclic twisting part",
              _abelianize_bundle),
        Check("presentations/abelianize-lens-free-product",
              "coprime lens free products abelianize to a single cyclic group",
              _abelianize_lens_product),
        Check("presentations/abelianize-three-torus",
              "untwisted genus-1 bundle abelianizes to Z^3",
              _abelianize_three_torus),
        Check("presentations/heegaard-attaching-words",
              "genus-3 attaching words reproduce the circle-bundle presentation",
              _heegaard_matches_bundle),
        Check("reeb/cycle-rank-loop-graph",
              "split-merge sphere-bundle graph has cycle rank 1",
              _loop_graph_cycle_rank),
        Check("reeb/cycle-rank-bundle-g2",
              "genus-2 bundle graph has cycle rank 2",
              _bundle_graph_cycle_rank),
        Check("reeb/census-ordered-tree",
              "ordered scripts give trees with 2g degree-2 vertices",
              _ordered_census),
        Check("reeb/census-bundle",
              "bundle scripts give 2g+2 degree-2 and 2g degree-3 vertices",
              _bundle_census),
        Check("reeb/betti-identity-bundle",
              "cycle rank matches -(k0+k3)/2 + delta3/2 + 1 on bundle graphs",
              _betti_identity_bundle),
        Check("reeb/parity-closed-sequences",
              "closed 3-manifold scripts always have even delta2",
              _parity_closed),
        Check("reeb/parity-surface-graphs",
              "surface graphs match delta2 to the euler characteristic mod 2",
              _parity_surface),
        Check("reeb/canonical-pattern",
              "scrambled degree-2 vertices slide into the canonical index pattern",
              _canonical_pattern),
        Check("reeb/realization-obstruction",
              "excess cycle rank is obstructed, the matching bundle graph is not",
              _obstruction_cases),
        Check("handles/s2xs1-split-below-merge",
              "sphere-bundle script puts its index-2 vertex below the index-1",
              _s2xs1_shape),
        Check("handles/bundle-census-range",
              "bundle censuses for g up to 6: k1=k2=2g+1, delta2=2g+2, beta1=g",
              _bundle_full_census),
        Check("handles/staircase-delta2",
              "staircase scripts give delta2 = 2(k1-r) across the grid",
              _canonical_sequence_delta),
        Check("handles/sum-of-sphere-bundles",
              "connected sum of two sphere-bundle scripts: beta1 2, delta2 0",
              _sum_of_loops),
        Check("handles/bundle-g1",
              "unit-twist genus-1 bundle script: beta1 1, delta2 4, k1 3",
              _bundle_g1),
        Check("bounds/rank-corank-lens-pair",
              "lens pair profile: rank 2, corank 0, bound 4",
              _lens_pair_bound),
        Check("bounds/rank-corank-surface-product",
              "surface-times-sphere profiles clear the 2g bound",
              _surface_product_bound),
        Check("bounds/homology-torus",
              "torus homology bound evaluates to 2^n - 4",
              _torus_homology_bound),
        Check("bounds/homology-sphere",
              "homology sphere: zero homology bound, category 2, exact 2g",
              _homology_sphere_bounds),
        Check("bounds/category-projective-spaces",
              "projective spaces: category bound n-1 in both families",
              _projective_category_bounds),
        Check("bounds/genus-exactness",
              "genus bound is exact for non-unit bundles, homology spheres,"
              " and vanishes on sphere-bundle sums",
              _genus_bounds_exact),
        Check("bounds/heisenberg",
              "heisenberg profile: staircase bound 4, exact 4",
              _heisenberg_estimate),
        Check("bounds/unit-twist-intervals",
              "unit-twist bundles for g >= 2 stay an interval [max(2g,4), 2g+2]",
              _unit_twist_intervals),
        Check("bounds/classified-sums",
              "sums classify: one lens summand pins 2, none pins 0",
              _classified_sums),
        Check("catalog/circle-bundle-fields",
              "bundle profiles carry the published rank, corank and genus",
              _catalog_bundle_fields),
        Check("cli/simulate-dot",
              "simulate subcommand emits the genus-2 bundle graph as DOT",
              _cli_simulate_dot),
    )


def run_all() -> tuple[CheckResult, ...]:
    out = []
    for check in all_checks():
        try:
            ok, detail = check.run()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        out.append(CheckResult(check.check_id, check.description, ok, detail))
    return tuple(out)
