"""Built-in manifold profiles and their witness constructions.

Every numeric field is an input with a provenance tag; nothing here is
computed from topology at runtime.  Dimension-3 entries come with a
handle script builder realizing the profile's upper bound, used by the
tests to confirm that the estimates are achieved.
"""

from dataclasses import replace
from math import comb

from . import handles
from .bounds import ManifoldProfile, connected_sum


def _prov(**fields: str) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(fields.items()))


def sphere(n: int) -> ManifoldProfile:
    if n < 2:
        raise ValueError("need n >= 2")
    return ManifoldProfile(
        name=f"s{n}",
        dim=n,
        orientable=True,
        euler_char=1 + (-1) ** n,
        pi1_rank=0,
        pi1_corank=0,
        homology_ranks=(("Z", (0,) * (n - 1)),),
        ls_category=2,
        heegaard_genus=0 if n == 3 else None,
        pi1_free=True,
        pi1_trivial=True,
        pi1_torsion_free=True,
        prime_summands=() if n == 3 else None,
        delta2_witness_upper=0,
        provenance=_prov(
            ls_category="classical",
            delta2_witness_upper="height function",
        ),
    )


def real_projective(n: int) -> ManifoldProfile:
    if n < 3:
        raise ValueError("need n >= 3")
    orientable = n % 2 == 1
    three = n == 3
    return ManifoldProfile(
        name=f"rp{n}",
        dim=n,
        orientable=orientable,
        euler_char=0 if orientable else 1,
        pi1_rank=1,
        pi1_corank=0,
        homology_ranks=(("Z", (0,) * (n - 1)), ("F2", (1,) * (n - 1))),
        ls_category=n + 1,
        heegaard_genus=1 if three else None,
        pi1_free=False,
        pi1_trivial=False,
        pi1_torsion_free=False,
        prime_summands=("lens(2)",) if three else None,
        delta2_witness_upper=2 if three else None,
        provenance=_prov(ls_category="classical cup-length", pi1_corank="finite group"),
    )


def complex_projective(n: int) -> ManifoldProfile:
    if n < 2:
        raise ValueError("need n >= 2")
    middle = tuple(1 if k % 2 == 0 else 0 for k in range(1, 2 * n))
    return ManifoldProfile(
        name=f"cp{n}",
        dim=2 * n,
        orientable=True,
        euler_char=n + 1,
        pi1_rank=0,
        pi1_corank=0,
        homology_ranks=(("Z", middle),),
        ls_category=n + 1,
        pi1_free=True,
        pi1_trivial=True,
        pi1_torsion_free=True,
        provenance=_prov(ls_category="classical cup-length"),
    )


def torus(n: int) -> ManifoldProfile:
    if n < 3:
        raise ValueError("need n >= 3")
    three = n == 3
    return ManifoldProfile(
        name=f"t{n}",
        dim=n,
        orientable=True,
        euler_char=0,
        pi1_rank=n,
        pi1_corank=1,
        homology_ranks=(("Z", tuple(comb(n, k) for k in range(1, n))),),
        ls_category=n + 1,
        heegaard_genus=3 if three else None,
        pi1_free=False,
        pi1_trivial=False,
        pi1_torsion_free=True,
        prime_summands=("other:torus",) if three else None,
        delta2_witness_upper=4 if three else None,
        provenance=_prov(
            pi1_corank="abelian group",
            ls_category="classical",
            heegaard_genus="literature" if three else "n/a",
        ),
    )


def surface_times_sphere(g: int, k: int) -> ManifoldProfile:
    """Sigma_g x S^k for k >= 2, dimension k+2."""
    if g < 1 or k < 2:
        raise ValueError("need g >= 1 and k >= 2")
    dim = k + 2
    ranks = [0] * (dim - 1)
    ranks[0] = 2 * g  # H_1
    ranks[1] += 1  # H_2 from the surface
    ranks[k - 1] += 1  # H_k from the sphere
    ranks[k] += 2 * g  # H_{k+1}
    return ManifoldProfile(
        name=f"sigma{g}xs{k}",
        dim=dim,
        orientable=True,
        euler_char=(2 - 2 * g) * (1 + (-1) ** k),
        pi1_rank=2 * g,
        pi1_corank=g,
        homology_ranks=(("Z", tuple(ranks)),),
        ls_category=4,
        pi1_free=False,
        pi1_trivial=False,
        pi1_torsion_free=True,
        provenance=_prov(pi1_corank="surface group", ls_category="cup-length"),
    )


def lens_profile(p: int) -> ManifoldProfile:
    if p < 2:
        raise ValueError("need p >= 2")
    return ManifoldProfile(
        name=f"lens{p}",
        dim=3,
        orientable=True,
        euler_char=0,
        pi1_rank=1,
        pi1_corank=0,
        homology_ranks=(("Z", (0, 0)), (f"F{p}", (1, 1))),
        ls_category=4,
        heegaard_genus=1,
        pi1_free=False,
        pi1_trivial=False,
        pi1_torsion_free=False,
        prime_summands=(f"lens({p})",),
        delta2_witness_upper=2,
        provenance=_prov(ls_category="non-free fundamental group", pi1_corank="finite group"),
    )


def s2xs1_profile() -> ManifoldProfile:
    return ManifoldProfile(
        name="s2xs1",
        dim=3,
        orientable=True,
        euler_char=0,
        pi1_rank=1,
        pi1_corank=1,
        homology_ranks=(("Z", (1, 1)),),
        ls_category=3,
        heegaard_genus=1,
        pi1_free=True,
        pi1_trivial=False,
        pi1_torsion_free=True,
        prime_summands=("s2xs1",),
        delta2_witness_upper=0,
        provenance=_prov(ls_category="free fundamental group"),
    )


def s2xs1_sum(r: int) -> ManifoldProfile:
    if r < 1:
        raise ValueError("need r >= 1")
    out = s2xs1_profile()
    for _ in range(r - 1):
        out = connected_sum(out, s2xs1_profile())
    return replace(out, name=f"s2xs1-sum{r}", ls_category=3)


def circle_bundle_profile(g: int, e: int) -> ManifoldProfile:
    """Orientable circle bundle over the genus-g surface, twisting e."""
    if g < 1:
        raise ValueError("need g >= 1")
    unit = e in (1, -1)
    b1 = 2 * g + (1 if e == 0 else 0)
    return ManifoldProfile(
        name=f"circle-bundle-g{g}-e{e}",
        dim=3,
        orientable=True,
        euler_char=0,
        pi1_rank=2 * g if unit else 2 * g + 1,
        pi1_corank=g,
        homology_ranks=(("Z", (b1, b1)),),
        ls_category=4,
        heegaard_genus=2 * g if unit else 2 * g + 1,
        pi1_free=False,
        pi1_trivial=False,
        pi1_torsion_free=True,
        prime_summands=("other:circle-bundle",),
        delta2_witness_upper=2 * g + 2,
        provenance=_prov(
            pi1_rank="literature",
            heegaard_genus="literature",
            pi1_corank="literature",
            delta2_witness_upper="construction",
        ),
    )


def heisenberg_profile() -> ManifoldProfile:
    base = circle_bundle_profile(1, 1)
    return replace(
        base,
        name="heisenberg",
        omega_lower=2,
        omega_provenance="literature",
    )


def homology_sphere(g: int) -> ManifoldProfile:
    """Generic integer homology sphere of Heegaard genus g >= 2."""
    if g < 2:
        raise ValueError("need g >= 2")
    return ManifoldProfile(
        name=f"homology-sphere-g{g}",
        dim=3,
        orientable=True,
        euler_char=0,
        pi1_corank=0,
        homology_ranks=(("Z", (0, 0)),),
        ls_category=4,
        heegaard_genus=g,
        pi1_free=False,
        pi1_trivial=False,
        prime_summands=("other:homology-sphere",),
        delta2_witness_upper=2 * g,
        provenance=_prov(
            pi1_corank="trivial first homology",
            ls_category="non-free fundamental group",
            delta2_witness_upper="ordered function of genus g",
        ),
    )


def _named_sum(name: str, p: ManifoldProfile, q: ManifoldProfile) -> ManifoldProfile:
    return replace(connected_sum(p, q), name=name)


def catalog() -> tuple[ManifoldProfile, ...]:
    out: list[ManifoldProfile] = []
    out += [sphere(n) for n in range(2, 9)]
    out += [real_projective(n) for n in range(3, 9)]
    out += [complex_projective(n) for n in range(3, 9)]
    out += [torus(n) for n in range(3, 7)]
    out += [surface_times_sphere(g, k) for g in (2, 3) for k in (2, 3)]
    out += [lens_profile(p) for p in (2, 3, 5, 7)]
    out.append(_named_sum("lens2+lens3", lens_profile(2), lens_profile(3)))
    out.append(_named_sum("lens3+lens5", lens_profile(3), lens_profile(5)))
    out.append(s2xs1_profile())
    out += [s2xs1_sum(r) for r in (2, 3, 4)]
    out.append(_named_sum("s2xs1-sum2+lens5", s2xs1_sum(2), lens_profile(5)))
    out.append(_named_sum("s2xs1-sum3+lens7", s2xs1_sum(3), lens_profile(7)))
    out += [
        circle_bundle_profile(g, e)
        for g in (1, 2, 3, 4)
        for e in (-1, 0, 1, 2, 3)
    ]
    out.append(heisenberg_profile())
    out += [homology_sphere(g) for g in (2, 3, 4, 5)]
    names = [p.name for p in out]
    if len(set(names)) != len(names):
        raise RuntimeError("duplicate catalog names")
    return tuple(out)


def catalog_by_name() -> dict[str, ManifoldProfile]:
    return {p.name: p for p in catalog()}


def get_profile(name: str) -> ManifoldProfile:
    table = catalog_by_name()
    if name not in table:
        raise ValueError(f"unknown catalog profile {name!r}")
    return table[name]


def witness_sequence(name: str) -> "handles.HandleSequence | None":
    """Handle script achieving the profile's upper bound, when one exists."""
    table = catalog_by_name()
    if name not in table:
        raise ValueError(f"unknown catalog profile {name!r}")

    def rsum(seqs):
        out = seqs[0]
        for s in seqs[1:]:
            out = handles.connected_sum(out, s)
        return out

    if name == "s3":
        return handles.canonical_sequence(0, 0)
    if name == "s2xs1":
        return handles.s2xs1()
    if name.startswith("s2xs1-sum"):
        tail = name[len("s2xs1-sum"):]
        if "+lens" in tail:
            r = int(tail.split("+", 1)[0])
            return rsum([handles.s2xs1()] * r + [handles.ordered(1)])
        return rsum([handles.s2xs1()] * int(tail))
    if name.startswith("lens") and "+" in name:
        return rsum([handles.ordered(1), handles.ordered(1)])
    if name.startswith("lens"):
        return handles.ordered(1)
    if name == "t3":
        return handles.circle_bundle_seq(1, 0)
    if name == "heisenberg":
        return handles.circle_bundle_seq(1, 1)
    if name.startswith("circle-bundle-g"):
        body = name[len("circle-bundle-g"):]
        g_text, e_text = body.split("-e", 1)
        return handles.circle_bundle_seq(int(g_text), int(e_text))
    if name.startswith("homology-sphere-g"):
        return handles.ordered(int(name[len("homology-sphere-g"):]))
    return None
