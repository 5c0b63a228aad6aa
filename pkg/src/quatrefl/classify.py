"""The classification pipeline: index sets, per-K records, isomorphisms.

Dicyclic reflection groups carry index quadruples [n, a, b, r] of order 8nr;
polyhedral ones carry (K, |L|, H) labels.  Records are deduplicated up to
simultaneous translation/automorphism of (L, H), which is what "the same
canonical label" means for subgroups of the all-of-K group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .groups import (
    FiniteQuaternionGroup,
    Subgroup,
    automorphism_group,
    build_group,
    normal_subgroups,
)
from .numutil import divisor_count, is_square
from .refsystems import (
    DicyclicIndex,
    ReflectionSystem,
    _translates,
    dicyclic_system,
    enumerate_systems,
    omega_set,
)
from .refgroups import (
    ReflectionGroup,
    PreconditionError,
    build_reflection_group,
    default_max_order,
    induced_quotient_involution,
    is_canonical,
    iso_prescreen,
    isomorphism_search,
    minimal_diagonal_subgroup,
    reflection_orbit_types,
    verify_isomorphism,
)


@dataclass(frozen=True)
class IndexQuadruple:
    """Label [n, a, b, r] of a dicyclic reflection group of order 8nr."""

    n: int
    a: int
    b: int
    r: int

    def __post_init__(self):
        DicyclicIndex(self.n, self.a, self.b)  # validates the pair
        prod = self.a * self.b * self.r
        if prod == self.n:
            return
        if prod == 2 * self.n and (self.a * self.b) % 2 == 1:
            return
        raise ValueError(f"[{self.n},{self.a},{self.b},{self.r}] is not a valid index")

    @property
    def is_higher(self) -> bool:
        return self.a * self.b * self.r == 2 * self.n

    @property
    def order(self) -> int:
        return 8 * self.n * self.r

    @property
    def reflections(self) -> int:
        return 2 * self.r + 2 * self.n // self.a + 2 * self.n // self.b - 2

    @property
    def L_size(self) -> int:
        return 2 * self.n // self.a + 2 * self.n // self.b

    @property
    def H_name(self) -> str:
        return f"C{self.r}" if self.r > 1 else "1"

    def orbit_entries(self) -> tuple[tuple[int, str], ...]:
        """Closed-form reflection-orbit types (validated against direct
        computation for n <= 12 in the test suite)."""
        n, a, b = self.n, self.a, self.b
        entries: list[tuple[int, str]] = []
        if self.r > 1:
            entries.append((2, self.H_name))
        nondiag: list[int] = []
        for side in (a, b):
            if (n // side) % 2 == 1 or self.is_higher:
                nondiag.append(2 * n // side)
            else:
                nondiag.extend([n // side, n // side])
        entries.extend((s, "C2") for s in sorted(nondiag))
        return tuple(entries)

    def render(self) -> str:
        return f"[{self.n},{self.a},{self.b},{self.r}]"

    def as_list(self) -> list[int]:
        return [self.n, self.a, self.b, self.r]


@dataclass(frozen=True)
class ClassificationRecord:
    family: str                 # 'polyhedral' | 'dicyclic' | 'dicyclic-special'
    K_name: str
    L_size: int
    H_name: str
    order: int
    reflections: int
    orbit_types: str
    canonical: bool
    label: tuple
    iso_partner: Optional[str] = None

    def label_str(self) -> str:
        if self.family == "dicyclic":
            return "[" + ",".join(str(v) for v in self.label) + "]"
        K, L, H = self.label
        return f"G_{K}(L{L},{H})" if self.family == "polyhedral" else f"G_{K}({L},{H})"

    def orbit_multiset(self) -> tuple:
        out = []
        for part in self.orbit_types.split(","):
            if not part:
                continue
            i = 0
            while i < len(part) and part[i].isdigit():
                i += 1
            out.append((int(part[:i]), part[i:]))
        return tuple(sorted(out))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "label": self.label_str(),
            "K": self.K_name,
            "L": self.L_size,
            "H": self.H_name,
            "order": self.order,
            "reflections": self.reflections,
            "orbit_types": self.orbit_types,
            "canonical": self.canonical,
            "iso_partner": self.iso_partner,
        }


# -- index sets ------------------------------------------------------------


def lambda_set(n: int) -> list[IndexQuadruple]:
    """Base indices [n,a,b,n/ab] plus higher indices [n,a,b,2n/ab] for ab odd."""
    if n < 2:
        raise ValueError(f"lambda_set needs n >= 2, got {n}")
    out = []
    for idx in omega_set(n):
        a, b = idx.a, idx.b
        out.append(IndexQuadruple(n, a, b, n // (a * b)))
        if (a * b) % 2 == 1:
            out.append(IndexQuadruple(n, a, b, 2 * n // (a * b)))
    out.sort(key=lambda q: (q.n, q.a, q.b, q.r))
    return out


def lambda_count_formula(n: int) -> int:
    """|Lambda_n| = tau(2 n^2) / 2 + 1."""
    return divisor_count(2 * n * n) // 2 + 1


# -- per-K classification ----------------------------------------------------


def _stabilizing_automorphisms(L: ReflectionSystem):
    """Automorphisms that map some member-translate of L back onto L."""
    K = L.parent
    target = L.member_set()
    autos = automorphism_group(K)
    if L.size == K.order:
        return autos
    out = []
    translates = _translates(K, target)
    for phi in autos:
        img = phi.image
        for _, _, translated in translates:
            if all(img[t] in target for t in translated):
                out.append(phi)
                break
    return out


def _dedup_subgroups(L: ReflectionSystem, subgroups: list[Subgroup]) -> list[Subgroup]:
    """One representative H per orbit under the stabilizer of L's class."""
    stab = _stabilizing_automorphisms(L)
    seen: set[frozenset] = set()
    kept = []
    for H in subgroups:
        mem = H.member_set()
        if mem in seen:
            continue
        kept.append(H)
        for phi in stab:
            seen.add(frozenset(phi.image[h] for h in mem))
    return kept


def _valid_higher(K: FiniteQuaternionGroup, L: ReflectionSystem, H: Subgroup,
                  H_L: Subgroup) -> bool:
    L_set = L.member_set()
    if not (H.order > H_L.order and H_L.member_set() <= H.member_set() <= L_set):
        return False
    if any(K.cayley[x][h] not in L_set for x in L.members for h in H.members):
        return False  # LH != L
    try:
        gamma, rep, _ = induced_quotient_involution(K, L.members, H.members)
    except PreconditionError:
        return False
    L_gamma = tuple(b for b in range(K.order) if rep[K.inv[b]] == gamma[rep[b]])
    return L_gamma == L.members


def classify_K(K: FiniteQuaternionGroup) -> list[ClassificationRecord]:
    """Base and higher-order canonical groups for every system class of K."""
    records: list[tuple[ClassificationRecord, ReflectionGroup]] = []
    nsubs = normal_subgroups(K)
    for L in enumerate_systems(K):
        H_L = minimal_diagonal_subgroup(K, L)
        chosen = [H_L]
        higher = [H for H in nsubs if _valid_higher(K, L, H, H_L)]
        chosen.extend(_dedup_subgroups(L, higher))
        for H in chosen:
            G = build_reflection_group(K, L, H)
            if not is_canonical(G):
                raise AssertionError(
                    f"classification produced a non-canonical record for {K.name}")
            records.append((_record_from_group(K, L, H, G), G))
    records.sort(key=lambda rg: (rg[0].order, rg[0].label_str()))
    out = []
    for rec, G in records:
        rec_group_map[rec] = G
        out.append(rec)
    return out


# Built groups for records, kept out of the (frozen, hashable) record itself.
rec_group_map: dict[ClassificationRecord, ReflectionGroup] = {}


def _record_from_group(K, L, H, G) -> ClassificationRecord:
    label: tuple
    if K.tag == "dicyclic":
        family = "dicyclic"
        idx = _dicyclic_label(K, L, H)
        if idx is None:
            family = "dicyclic-special"
            label = (K.name, K.name, H.name)
        else:
            label = (idx.n, idx.a, idx.b, idx.r)
    else:
        family = "polyhedral" if K.tag in ("T", "O", "I") else "cyclic"
        label = (K.name, L.size, H.name)
    return ClassificationRecord(
        family=family,
        K_name=K.name,
        L_size=L.size,
        H_name=H.name,
        order=G.order,
        reflections=G.reflection_count(),
        orbit_types=reflection_orbit_types(G).render(),
        canonical=is_canonical(G),
        label=label,
    )


def _dicyclic_label(K: FiniteQuaternionGroup, L: ReflectionSystem,
                    H: Subgroup) -> Optional[IndexQuadruple]:
    """Match (L, H) to [n, a, b, r]; None for the nonabelian-H rows."""
    n = K.n
    if H.name.startswith("D") or H.name in ("Q8",) or (H.name == K.name):
        return None
    r = H.order
    size = L.size
    for idx in omega_set(n):
        if idx.size == size:
            try:
                return IndexQuadruple(n, idx.a, idx.b, r)
            except ValueError:
                return None
    return None


def group_for_record(rec: ClassificationRecord) -> ReflectionGroup:
    """Build (or fetch) the reflection group behind a record."""
    G = rec_group_map.get(rec)
    if G is not None:
        return G
    if rec.family == "dicyclic":
        n, a, b, r = rec.label
        G = build_index_group(IndexQuadruple(n, a, b, r))
    elif rec.family == "dicyclic-special":
        K = build_group("dicyclic", int(rec.K_name[1:]))
        L = next(S for S in enumerate_systems(K) if S.size == rec.L_size)
        H = next(S2 for S2 in normal_subgroups(K)
                 if S2.order == _h_order(rec.H_name) and S2.name == rec.H_name)
        G = build_reflection_group(K, L, H)
    else:
        K = build_group(rec.K_name)
        L = next(S for S in enumerate_systems(K) if S.size == rec.L_size)
        H = next(S2 for S2 in normal_subgroups(K)
                 if S2.order == _h_order(rec.H_name) and S2.name == rec.H_name)
        G = build_reflection_group(K, L, H)
    rec_group_map[rec] = G
    return G


def _h_order(name: str) -> int:
    if name == "1":
        return 1
    if name == "Q8":
        return 8
    if name.startswith("C"):
        return int(name[1:])
    if name.startswith("D"):
        return 4 * int(name[1:])
    return {"T": 24, "O": 48, "I": 120}[name]


def build_index_group(idx: IndexQuadruple) -> ReflectionGroup:
    """Honest construction of G(n, a, b, r) inside the dicyclic group."""
    K = build_group("dicyclic", idx.n)
    L = dicyclic_system(DicyclicIndex(idx.n, idx.a, idx.b))
    gen = K.subgroup_closure([_omega_power(K, 2 * idx.n // idx.r)]) if idx.r > 1 else (0,)
    H = Subgroup(K, gen)
    return build_reflection_group(K, L, H, label=(idx.n, idx.a, idx.b, idx.r))


def _omega_power(K: FiniteQuaternionGroup, e: int) -> int:
    from .refsystems import _dicyclic_element

    return _dicyclic_element(K, e % (2 * K.n), 0)


def dicyclic_record(idx: IndexQuadruple) -> ClassificationRecord:
    """Formula-based record for [n,a,b,r] (no group construction)."""
    orbit = idx.orbit_entries()
    return ClassificationRecord(
        family="dicyclic",
        K_name=f"D{idx.n}",
        L_size=idx.L_size,
        H_name=idx.H_name,
        order=idx.order,
        reflections=idx.reflections,
        orbit_types=",".join(f"{s}{t}" for s, t in orbit),
        canonical=True,
        label=(idx.n, idx.a, idx.b, idx.r),
    )


def dicyclic_special_record(n: int, half: bool) -> ClassificationRecord:
    """The L = K = D_n rows with nonabelian H: H = D_n or (n even) H = D_{n/2}."""
    if half:
        if n % 2 or n < 4:
            raise ValueError("the half-H row needs even n >= 4")
        order, refl = 16 * n * n, 8 * n - 2
        h_name = "Q8" if n == 4 else f"D{n // 2}"
    else:
        order, refl = 32 * n * n, 12 * n - 2
        h_name = "Q8" if n == 2 else f"D{n}"
    return ClassificationRecord(
        family="dicyclic-special",
        K_name=f"D{n}",
        L_size=4 * n,
        H_name=h_name,
        order=order,
        reflections=refl,
        orbit_types=f"2{h_name},{4 * n}C2",
        canonical=True,
        label=(f"D{n}", f"D{n}", h_name),
    )


@lru_cache(maxsize=None)
def polyhedral_records() -> tuple[ClassificationRecord, ...]:
    out = []
    for tag in ("T", "O", "I"):
        out.extend(classify_K(build_group(tag)))
    return tuple(out)


# -- scans -------------------------------------------------------------------


def order_scan(order: int) -> list[ClassificationRecord]:
    """All imprimitive rank-two records of a given order, both families."""
    records = []
    n = 2
    while 8 * n <= order:
        if order % (8 * n) == 0:
            r = order // (8 * n)
            records.extend(dicyclic_record(idx) for idx in lambda_set(n) if idx.r == r)
        n += 1
    if order % 32 == 0 and is_square(order // 32):
        m = math.isqrt(order // 32)
        if m >= 2:
            records.append(dicyclic_special_record(m, half=False))
    if order % 16 == 0 and is_square(order // 16):
        m = math.isqrt(order // 16)
        # m = 2 would duplicate [2,1,1,4]: D_1 = <w^2, j> is the cyclic C4
        if m >= 4 and m % 2 == 0:
            records.append(dicyclic_special_record(m, half=True))
    records.extend(rec for rec in polyhedral_records() if rec.order == order)
    records.sort(key=lambda rec: (rec.family, rec.label_str()))
    return records


def missing_from_cohen(max_n: int) -> list[IndexQuadruple]:
    """Indices in Lambda_n absent from the classical seven-line parametrization:
    (a,b) != (1,1), r != 2, r does not divide n, r divides 2n."""
    out = []
    for n in range(2, max_n + 1):
        for idx in lambda_set(n):
            if (idx.a, idx.b) == (1, 1):
                continue
            if idx.r == 2 or n % idx.r == 0 or (2 * n) % idx.r != 0:
                continue
            out.append(idx)
    out.sort(key=lambda q: (q.n, q.a, q.b, q.r))
    return out


def cohen_index(line: int, m: int, l: Optional[int] = None,
                r: Optional[int] = None) -> IndexQuadruple:
    """Index quadruple for one line of the classical table, normalized a <= b.

    Lines 1..5 are, in order: the (1,1)-higher row, the even-H and odd-H
    base rows over D_{2ml} / D_{(2m+1)l}, the C2 rows over D_{2m+1}, and the
    H = 1 base rows over D_m.
    """
    def norm(n, a, b, rr):
        a, b = min(a, b), max(a, b)
        return IndexQuadruple(n, a, b, rr)

    if line == 1:
        if m < 2:
            raise ValueError("line 1 needs m >= 2")
        return norm(m, 1, 1, 2 * m)
    if line in (2, 3):
        if l is None or r is None:
            raise ValueError(f"line {line} needs parameters l and r")
        if not (0 <= r <= l and r % 2 == 1):
            raise ValueError(f"line {line} needs odd r with 0 <= r <= l")
        if l != math.gcd(l, (r + 1) // 2) * math.gcd(l, (r - 1) // 2):
            raise ValueError(f"line {line} constraint l = gcd*gcd fails")
        h = 2 * m if line == 2 else 2 * m + 1
        n = h * l
        return norm(n, math.gcd(l, (r - 1) // 2), math.gcd(l, (r + 1) // 2), h)
    if line == 4:
        if r is None:
            raise ValueError("line 4 needs parameter r")
        n = 2 * m + 1
        if not 0 <= r <= m:
            raise ValueError("line 4 needs 0 <= r <= m")
        if n != math.gcd(n, r + 1) * math.gcd(n, r - 1):
            raise ValueError("line 4 constraint 2m+1 = gcd*gcd fails")
        return norm(n, math.gcd(n, r - 1), math.gcd(n, r + 1), 2)
    if line == 5:
        if r is None:
            raise ValueError("line 5 needs parameter r")
        if not (0 <= r <= m and r % 2 == 1):
            raise ValueError("line 5 needs odd r with 0 <= r <= m")
        if m != math.gcd(m, (r + 1) // 2) * math.gcd(m, (r - 1) // 2):
            raise ValueError("line 5 constraint m = gcd*gcd fails")
        return norm(m, math.gcd(m, (r - 1) // 2), math.gcd(m, (r + 1) // 2), 1)
    raise ValueError(f"unknown table line {line}")


def cohen_covered_indices(n: int) -> set[IndexQuadruple]:
    """Every [n,a,b,r] the five-line parametrization produces for this n."""
    out: set[IndexQuadruple] = set()
    if n >= 2:
        out.add(cohen_index(1, n))
    for line, h_of_m in ((2, lambda m: 2 * m), (3, lambda m: 2 * m + 1)):
        for m in range(1, n + 1):
            h = h_of_m(m)
            if h == 0 or n % h:
                continue
            l = n // h
            for r in range(1, l + 1, 2):
                try:
                    out.add(cohen_index(line, m, l, r))
                except ValueError:
                    pass
    if n % 2 == 1 and n >= 3:
        m = (n - 1) // 2
        for r in range(0, m + 1):
            try:
                out.add(cohen_index(4, m, r=r))
            except ValueError:
                pass
    for r in range(1, n + 1, 2):
        try:
            out.add(cohen_index(5, n, r=r))
        except ValueError:
            pass
    return {idx for idx in out if idx.n == n}


# -- isomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class IsomorphismResult:
    label1: str
    label2: str
    map_summary: str


def the_polyhedral_isomorphism():
    """The verified map between the order-96 octahedral and tetrahedral groups.

    Uses the literal seed systems: L14 in O is L12 of T together with the two
    antidiagonal reflections over (j-k)/sqrt2 and its negative; the map fixes
    the common reflections and sends the (j-k)/sqrt2 one to diag(-1, 1).
    """
    from fractions import Fraction

    from .exactarith import FieldScalar, Quaternion
    from .refsystems import close_system

    T = build_group("T")
    O = build_group("O")
    half = Fraction(1, 2)
    zeta_T = T.index[Quaternion.from_rationals(4, (half,) * 4)]
    i_T = T.index[Quaternion.unit(4, "i")]
    L12 = close_system(T, (0, i_T, zeta_T))

    s = FieldScalar.sqrt2(8) * FieldScalar.from_rational(8, half)
    zero = FieldScalar.zero(8)
    u = O.index[Quaternion(zero, zero, s, -s)]  # (j - k)/sqrt2
    zeta_O = O.index[Quaternion.from_rationals(8, (half,) * 4)]
    i_O = O.index[Quaternion.unit(8, "i")]
    L14 = close_system(O, (0, i_O, zeta_O, u))

    C2_T = next(S for S in normal_subgroups(T) if S.order == 2)
    triv_O = next(S for S in normal_subgroups(O) if S.order == 1)
    G_O = build_reflection_group(O, L14, triv_O)
    G_T = build_reflection_group(T, L12, C2_T)

    lift = {q.lift(8): T.index[q] for q in T.elements}
    minus_one_T = T.index[Quaternion.from_rationals(4, (-1, 0, 0, 0))]
    pairs = [((u, O.inv[u], 1), (minus_one_T, 0, 0))]
    for b in L14.members:
        val = O.elements[b]
        if val in lift:
            t = lift[val]
            pairs.append(((b, O.inv[b], 1), (t, T.inv[t], 1)))
    return G_O, G_T, pairs


def the_dicyclic_family_isomorphism(n: int):
    """The verified map G(n,1,n,2) -> G(2n,2,n,1) for odd n."""
    from .refsystems import _dicyclic_element

    if n % 2 == 0:
        raise ValueError("the family needs odd n")
    G1 = build_index_group(IndexQuadruple(n, 1, n, 2))
    G2 = build_index_group(IndexQuadruple(2 * n, 2, n, 1))
    K1, K2 = G1.K, G2.K

    def refl(K, idx):
        return (idx, K.inv[idx], 1)

    minus1 = _dicyclic_element(K1, n, 0)
    pairs = [
        (refl(K1, 0), refl(K2, 0)),
        (refl(K1, _dicyclic_element(K1, 1, 0)), refl(K2, _dicyclic_element(K2, 2, 0))),
        (refl(K1, _dicyclic_element(K1, 0, 1)), refl(K2, _dicyclic_element(K2, 0, 1))),
        ((0, minus1, 0), refl(K2, _dicyclic_element(K2, n, 1))),
    ]
    return G1, G2, pairs


def find_isomorphisms(records: Sequence[ClassificationRecord],
                      build_bound: Optional[int] = None,
                      search_bound: int = 4608) -> list[IsomorphismResult]:
    """Verified isomorphic pairs among the given records.

    Invariant-distinct pairs are dropped without building anything; the two
    known patterns get their explicit maps; any other surviving candidate is
    settled by exhaustive generator-image search (bounded).
    """
    build_bound = default_max_order() if build_bound is None else build_bound
    buckets: dict[tuple[int, int], list[ClassificationRecord]] = {}
    for rec in records:
        buckets.setdefault((rec.order, rec.reflections), []).append(rec)
    results = []
    for (order, _), bucket in sorted(buckets.items()):
        if len(bucket) < 2:
            continue
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                r1, r2 = bucket[i], bucket[j]
                result = _settle_pair(r1, r2, order, build_bound, search_bound)
                if result is not None:
                    results.append(result)
    return results


def _settle_pair(r1: ClassificationRecord, r2: ClassificationRecord, order: int,
                 build_bound: int, search_bound: int) -> Optional[IsomorphismResult]:
    # cheap formula-level invariants first
    if (r1.orbit_multiset() != r2.orbit_multiset()):
        return None
    known = _known_pair(r1, r2)
    if known is not None:
        G1, G2, pairs = known
        if not verify_isomorphism(G1, G2, pairs):
            raise AssertionError(f"explicit map failed for {r1.label_str()} ~ {r2.label_str()}")
        return IsomorphismResult(r1.label_str(), r2.label_str(),
                                 f"explicit map on {len(pairs)} generators")
    if order > build_bound:
        return None
    G1, G2 = group_for_record(r1), group_for_record(r2)
    verdict, _ = iso_prescreen(G1, G2)
    if verdict == "distinct":
        return None
    found = isomorphism_search(G1, G2, max_order=search_bound)
    if found is None:
        return None
    return IsomorphismResult(r1.label_str(), r2.label_str(),
                             f"search found map on {len(found)} generators")


def _known_pair(r1: ClassificationRecord, r2: ClassificationRecord):
    recs = {r1.family: r1, r2.family: r2}
    if set(recs) == {"polyhedral"}:
        labels = {r1.label, r2.label}
        if labels == {("T", 12, "C2"), ("O", 14, "1")}:
            return the_polyhedral_isomorphism()
        return None
    if r1.family == r2.family == "dicyclic":
        l1, l2 = sorted((r1.label, r2.label))
        n = l1[0]
        if n % 2 == 1 and l1 == (n, 1, n, 2) and l2 == (2 * n, 2, n, 1):
            return the_dicyclic_family_isomorphism(n)
        return None
    return None


# -- the corollary search ----------------------------------------------------


@dataclass(frozen=True)
class CorollaryPair:
    idx1: IndexQuadruple
    idx2: IndexQuadruple
    c: int
    certificate: str

    def to_json(self) -> dict:
        return {
            "pair": [self.idx1.as_list(), self.idx2.as_list()],
            "c": self.c,
            "order": self.idx1.order,
            "reflections": self.idx1.reflections,
            "certificate": self.certificate,
        }


def corollary_pair_search(max_n: int, kind: str) -> list[CorollaryPair]:
    """Equal-order, equal-reflection-count, non-isomorphic index pairs.

    kind 'i':  n = ab odd with a != 1, discriminant (a+b+1)^2 - 8ab = c^2;
    kind 'ii': n = 2ab, discriminant (2(a+b)+1)^2 - 16ab = c^2.  The partner
    lives at 2n with r = 1.  Every returned pair is checked to have equal
    order and reflection count and a non-isomorphism certificate.
    """
    if kind not in ("i", "ii"):
        raise ValueError(f"kind must be 'i' or 'ii', got {kind!r}")
    out = []
    for a in range(1, max_n + 1):
        if kind == "i" and (a == 1 or a % 2 == 0):
            continue
        for b in range(a, max_n // max(a, 1) + 1):
            if math.gcd(a, b) != 1:
                continue
            if kind == "i":
                if b % 2 == 0:
                    continue
                n = a * b
                disc = (a + b + 1) ** 2 - 8 * a * b
                s = a + b + 1
            else:
                n = 2 * a * b
                disc = (2 * (a + b) + 1) ** 2 - 16 * a * b
                s = 2 * (a + b) + 1
            if n > max_n or disc < 0 or not is_square(disc):
                continue
            c = math.isqrt(disc)
            if c % 2 == 0:
                continue
            a2, b2 = (s - c) // 2, (s + c) // 2
            pair = _validated_pair(n, a, b, a2, b2, c)
            if pair is not None:
                out.append(pair)
    out.sort(key=lambda p: (p.idx1.n, p.idx1.a, p.idx1.b))
    return out


def _validated_pair(n, a, b, a2, b2, c) -> Optional[CorollaryPair]:
    try:
        idx1 = IndexQuadruple(n, a, b, 2)
        idx2 = IndexQuadruple(2 * n, min(a2, b2), max(a2, b2), 1)
    except ValueError:
        return None
    if idx1.order != idx2.order or idx1.reflections != idx2.reflections:
        return None
    if idx1.orbit_entries() != idx2.orbit_entries():
        cert = "orbit-type multisets differ"
    else:
        cert = _pair_search_certificate(idx1, idx2)
    return CorollaryPair(idx1, idx2, c, cert)


def _pair_search_certificate(idx1: IndexQuadruple, idx2: IndexQuadruple) -> str:
    if idx1.order > 4608:
        return "invariant-equal, isomorphism search skipped"
    G1, G2 = build_index_group(idx1), build_index_group(idx2)
    found = isomorphism_search(G1, G2)
    if found is not None:
        raise AssertionError(f"corollary pair {idx1.render()} ~ {idx2.render()} is isomorphic")
    return "exhausted generator-map search"


def equal_invariant_cross_pairs(max_n: int) -> list[tuple[IndexQuadruple, IndexQuadruple]]:
    """Brute-force oracle: all index pairs at (n, 2n) with only order-2
    reflections sharing order and reflection count."""
    out = []
    for n in range(2, max_n + 1):
        small = [idx for idx in lambda_set(n) if idx.r == 2]
        large = [idx for idx in lambda_set(2 * n) if idx.r == 1]
        for i1 in small:
            for i2 in large:
                if i1.order == i2.order and i1.reflections == i2.reflections:
                    out.append((i1, i2))
    return out
