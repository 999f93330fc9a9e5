"""Lower and upper bounds for the minimum number of degree-2 Reeb
vertices of a closed manifold, evaluated from an invariant profile.

Profiles hold inputs, never computed values: corank, category and
Heegaard genus are notoriously hard, so they arrive tagged with their
source.  Unknown fields are first-class; every bound that cannot see its
inputs skips silently and the estimate records which bounds applied.
"""

import json
from dataclasses import dataclass

OMEGA_TAGS = ("torsion-free rule", "literature", "presentation-computed")


@dataclass(frozen=True)
class ManifoldProfile:
    name: str
    dim: int
    orientable: bool
    euler_char: int | None = None
    pi1_rank: int | None = None
    pi1_corank: int | None = None
    # ring name -> ranks of H_1 .. H_{dim-1} over that ring
    homology_ranks: tuple[tuple[str, tuple[int, ...]], ...] = ()
    ls_category: int | None = None
    heegaard_genus: int | None = None
    omega_lower: int | None = None
    omega_provenance: str | None = None
    pi1_free: bool | None = None
    pi1_trivial: bool | None = None
    pi1_torsion_free: bool | None = None
    prime_summands: tuple[str, ...] | None = None
    delta2_witness_upper: int | None = None
    delta2_exact: int | None = None
    provenance: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        if self.pi1_rank is not None and self.pi1_corank is not None:
            if self.pi1_corank > self.pi1_rank:
                raise ValueError("corank cannot exceed rank")
        if self.dim == 3 and self.orientable:
            if self.euler_char not in (None, 0):
                raise ValueError("closed orientable 3-manifolds have euler characteristic 0")
        if self.heegaard_genus is not None:
            if self.dim != 3:
                raise ValueError("heegaard genus only applies in dimension 3")
            if self.pi1_rank is not None and self.heegaard_genus < self.pi1_rank:
                raise ValueError("heegaard genus cannot be below rank")
        for ring, ranks in self.homology_ranks:
            if len(ranks) != self.dim - 1:
                raise ValueError(
                    f"ring {ring}: need ranks for H_1..H_{self.dim - 1},"
                    f" got {len(ranks)} values"
                )
            if any(r < 0 for r in ranks):
                raise ValueError(f"ring {ring}: negative rank")
        if self.omega_lower is not None:
            if self.omega_lower < 1:
                raise ValueError("omega lower bound must be >= 1")
            if self.omega_provenance not in OMEGA_TAGS:
                raise ValueError(
                    f"omega_lower needs a provenance tag from {OMEGA_TAGS}"
                )

    def homology(self, ring: str) -> tuple[int, ...] | None:
        for r, ranks in self.homology_ranks:
            if r == ring:
                return ranks
        return None

    def rings(self) -> tuple[str, ...]:
        return tuple(r for r, _ in self.homology_ranks)


def _need(value, what: str):
    if value is None:
        raise ValueError(f"profile is missing {what}")
    return value


def bound_rank_corank(p: ManifoldProfile) -> int:
    """2(rank - corank), floored at zero."""
    if p.dim < 3:
        raise ValueError("rank-corank bound applies in dimension >= 3")
    rank = _need(p.pi1_rank, "pi1_rank")
    corank = _need(p.pi1_corank, "pi1_corank")
    return max(0, 2 * (rank - corank))


def bound_homology(p: ManifoldProfile, ring: str) -> int:
    """Sum of middle homology ranks over one ring, minus 2*corank."""
    if p.dim < 3:
        raise ValueError("homology bound applies in dimension >= 3")
    ranks = p.homology(ring)
    if ranks is None:
        raise ValueError(f"profile has no homology ranks over {ring}")
    corank = _need(p.pi1_corank, "pi1_corank")
    return max(0, sum(ranks) - 2 * corank)


def bound_category(p: ManifoldProfile) -> int:
    """cat - 2*corank - 2, floored at zero."""
    cat = _need(p.ls_category, "ls_category")
    corank = _need(p.pi1_corank, "pi1_corank")
    return max(0, cat - 2 * corank - 2)


def bound_heegaard(p: ManifoldProfile) -> int:
    """2(genus - corank); the same genus caps the answer at 2*genus."""
    if p.dim != 3 or not p.orientable:
        raise ValueError("heegaard bound needs a closed orientable 3-manifold")
    g = _need(p.heegaard_genus, "heegaard_genus")
    corank = _need(p.pi1_corank, "pi1_corank")
    return max(0, 2 * (g - corank))


def effective_omega_lower(p: ManifoldProfile) -> int | None:
    """Certified staircase lower bound, auto-filled to 2 for torsion-free
    non-trivial non-free fundamental groups.  None when unavailable or
    undefined (free groups)."""
    if p.pi1_free is True or p.pi1_trivial is True:
        return None
    best = p.omega_lower
    if (
        p.pi1_torsion_free is True
        and p.pi1_trivial is False
        and p.pi1_free is False
    ):
        best = max(2, best or 0)
    return best


def bound_omega(p: ManifoldProfile) -> int:
    """Twice the staircase lower bound."""
    if p.dim != 3 or not p.orientable:
        raise ValueError("staircase bound needs a closed orientable 3-manifold")
    if p.pi1_free is True:
        raise ValueError("staircase invariant undefined for free fundamental groups")
    omega = effective_omega_lower(p)
    if omega is None:
        raise ValueError("profile certifies no staircase lower bound")
    return 2 * omega


@dataclass(frozen=True)
class Delta2Estimate:
    lower: int
    upper: int | None
    exact: bool
    provenance: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact estimate must pin a single value")

    def value_of(self, bound_id: str) -> int | None:
        for bid, v in self.provenance:
            if bid == bound_id:
                return v
        return None


def _summand_kind(desc: str) -> str:
    if desc == "s2xs1":
        return "s2xs1"
    if desc.startswith("lens(") and desc.endswith(")"):
        return "lens"
    return "other"


def estimate(p: ManifoldProfile) -> Delta2Estimate:
    """Aggregate every applicable bound into one interval.

    Lower bounds are maximized, tightened to the parity of the Euler
    characteristic, then raised by the lens-free rule (genus = corank+1
    with a known lens-free prime decomposition forces at least 4).
    Uppers come from twice the Heegaard genus and any construction
    witness.  A known prime decomposition settles the two classified
    values: all-sphere-bundle sums sit at 0, one extra lens summand at 2.
    """
    prov: list[tuple[str, int]] = []
    lows: list[int] = []

    def add(bid: str, value: int, is_lower=True):
        prov.append((bid, value))
        if is_lower:
            lows.append(value)

    if p.dim >= 3 and p.pi1_rank is not None and p.pi1_corank is not None:
        add("rank-corank", bound_rank_corank(p))
    if p.dim >= 3 and p.pi1_corank is not None:
        for ring in p.rings():
            add(f"homology:{ring}", bound_homology(p, ring))
    if p.ls_category is not None and p.pi1_corank is not None:
        add("category", bound_category(p))
    if (
        p.dim == 3
        and p.orientable
        and p.heegaard_genus is not None
        and p.pi1_corank is not None
    ):
        add("heegaard", bound_heegaard(p))
    if p.dim == 3 and p.orientable and p.pi1_free is not True:
        omega = effective_omega_lower(p)
        if omega is not None:
            add("omega", 2 * omega)

    lower = max(lows, default=0)

    if (
        p.dim == 3
        and p.orientable
        and p.heegaard_genus is not None
        and p.pi1_corank is not None
        and p.heegaard_genus == p.pi1_corank + 1
        and p.prime_summands is not None
        and all(_summand_kind(s) != "lens" for s in p.prime_summands)
        and lower < 4
    ):
        lower = 4
        add("lens-free-rule", 4)

    if p.euler_char is not None and lower % 2 != p.euler_char % 2:
        lower += 1
        add("parity", lower)

    ups: list[int] = []
    if p.dim == 3 and p.orientable and p.heegaard_genus is not None:
        add("genus-upper", 2 * p.heegaard_genus, is_lower=False)
        ups.append(2 * p.heegaard_genus)
    if p.delta2_witness_upper is not None:
        add("witness-upper", p.delta2_witness_upper, is_lower=False)
        ups.append(p.delta2_witness_upper)
    upper = min(ups) if ups else None

    if p.prime_summands is not None:
        kinds = [_summand_kind(s) for s in p.prime_summands]
        if all(k == "s2xs1" for k in kinds):
            lower, upper = 0, 0
            add("classification:trivial-sum", 0)
        elif kinds.count("lens") == 1 and all(k in ("s2xs1", "lens") for k in kinds):
            lower, upper = 2, 2
            add("classification:lens-summand", 2)

    if p.delta2_exact is not None:
        lower = upper = p.delta2_exact
        add("sum-equality-rule", p.delta2_exact)

    exact = upper is not None and lower == upper
    return Delta2Estimate(lower=lower, upper=upper, exact=exact, provenance=tuple(prov))


def connected_sum(p: ManifoldProfile, q: ManifoldProfile) -> ManifoldProfile:
    """Combine invariant profiles along a connected sum.

    Rank, corank, genus and homology ranks add (homology is dropped when
    neither summand is orientable, where the top-but-one rank rule
    fails).  Category and any certified staircase bound do not transfer.
    When both summands have exact estimates witnessed by equality in a
    shared additive bound, the sum's value is certified too.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    dim = p.dim

    def both(a, b, op):
        if a is None or b is None:
            return None
        return op(a, b)

    euler = None
    if p.euler_char is not None and q.euler_char is not None:
        euler = p.euler_char + q.euler_char - (1 + (-1) ** dim)

    homology: tuple[tuple[str, tuple[int, ...]], ...] = ()
    if p.orientable or q.orientable:
        shared = [r for r in p.rings() if q.homology(r) is not None]
        homology = tuple(
            (r, tuple(a + b for a, b in zip(p.homology(r), q.homology(r))))
            for r in shared
        )

    def tri_and(a, b):
        # True only when both are, False as soon as one is
        if a is False or b is False:
            return False
        if a is True and b is True:
            return True
        return None

    summands = None
    if p.prime_summands is not None and q.prime_summands is not None:
        summands = p.prime_summands + q.prime_summands

    certified = None
    est_p, est_q = estimate(p), estimate(q)
    if est_p.exact and est_q.exact:
        for bid in ("rank-corank", "heegaard", "homology:Z"):
            vp, vq = est_p.value_of(bid), est_q.value_of(bid)
            if vp == est_p.lower and vq == est_q.lower and vp is not None and vq is not None:
                certified = est_p.lower + est_q.lower
                break

    return ManifoldProfile(
        name=f"{p.name} # {q.name}",
        dim=dim,
        orientable=p.orientable and q.orientable,
        euler_char=euler,
        pi1_rank=both(p.pi1_rank, q.pi1_rank, int.__add__),
        pi1_corank=both(p.pi1_corank, q.pi1_corank, int.__add__),
        homology_ranks=homology,
        ls_category=None,
        heegaard_genus=both(p.heegaard_genus, q.heegaard_genus, int.__add__),
        omega_lower=None,
        omega_provenance=None,
        pi1_free=tri_and(p.pi1_free, q.pi1_free),
        pi1_trivial=tri_and(p.pi1_trivial, q.pi1_trivial),
        pi1_torsion_free=tri_and(p.pi1_torsion_free, q.pi1_torsion_free),
        prime_summands=summands,
        delta2_witness_upper=both(
            p.delta2_witness_upper, q.delta2_witness_upper, int.__add__
        ),
        delta2_exact=certified,
        provenance=(("all", "connected-sum combination"),),
    )


# ---------------------------------------------------------------------------
# Persistence

def profile_to_json_dict(p: ManifoldProfile) -> dict:
    return {
        "name": p.name,
        "dim": p.dim,
        "orientable": p.orientable,
        "euler_char": p.euler_char,
        "pi1_rank": p.pi1_rank,
        "pi1_corank": p.pi1_corank,
        "homology_ranks": {r: list(v) for r, v in p.homology_ranks},
        "ls_category": p.ls_category,
        "heegaard_genus": p.heegaard_genus,
        "omega_lower": p.omega_lower,
        "omega_provenance": p.omega_provenance,
        "pi1_free": p.pi1_free,
        "pi1_trivial": p.pi1_trivial,
        "pi1_torsion_free": p.pi1_torsion_free,
        "prime_summands": list(p.prime_summands) if p.prime_summands is not None else None,
        "delta2_witness_upper": p.delta2_witness_upper,
        "delta2_exact": p.delta2_exact,
        "provenance": {f: t for f, t in p.provenance},
    }


def profile_from_json_dict(data: dict) -> ManifoldProfile:
    try:
        homology = tuple(
            (str(r), tuple(int(x) for x in v))
            for r, v in dict(data.get("homology_ranks") or {}).items()
        )
        summands = data.get("prime_summands")
        return ManifoldProfile(
            name=str(data["name"]),
            dim=int(data["dim"]),
            orientable=bool(data["orientable"]),
            euler_char=data.get("euler_char"),
            pi1_rank=data.get("pi1_rank"),
            pi1_corank=data.get("pi1_corank"),
            homology_ranks=homology,
            ls_category=data.get("ls_category"),
            heegaard_genus=data.get("heegaard_genus"),
            omega_lower=data.get("omega_lower"),
            omega_provenance=data.get("omega_provenance"),
            pi1_free=data.get("pi1_free"),
            pi1_trivial=data.get("pi1_trivial"),
            pi1_torsion_free=data.get("pi1_torsion_free"),
            prime_summands=tuple(summands) if summands is not None else None,
            delta2_witness_upper=data.get("delta2_witness_upper"),
            delta2_exact=data.get("delta2_exact"),
            provenance=tuple(sorted((data.get("provenance") or {}).items())),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed profile JSON: {exc}") from None


def profile_to_json(p: ManifoldProfile) -> str:
    return json.dumps(profile_to_json_dict(p), indent=2) + "\n"


def profile_from_json(text: str) -> ManifoldProfile:
    return profile_from_json_dict(json.loads(text))
