"""Intersection rings for the geometry of 4-nodal conic bundles.

Three tiny graded rings are enough: products of projective spaces, the
degree-5 del Pezzo surface S (the plane blown up in four points), and the
P^2-bundle P over S carrying the conic bundles.  On top of them sit the
blow-up intersection table, the Riemann-Roch engine for O_P(d), and the
Euler-number bookkeeping behind the count of 77 singular members and 32
double lines in a pencil.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping


class ChowClass:
    """Element of a ChowRing: a rational combination of basis monomials."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs: Mapping):
        self.ring = ring
        self.coeffs = {k: Fraction(v) for k, v in coeffs.items() if v != 0}

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ChowClass(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        return ChowClass(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return ChowClass(self.ring, {k: v * c for k, v in self.coeffs.items()})
        other = self._coerce(other)
        out: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                for k, c in self.ring.mul_basis(k1, k2).items():
                    out[k] = out.get(k, Fraction(0)) + v1 * v2 * c
        return ChowClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        acc = self.ring.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        return (isinstance(other, ChowClass) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "ChowClass(0)"
        bits = [f"{v}*{self.ring.key_name(k)}" for k, v in sorted(
            self.coeffs.items(), key=lambda kv: str(kv[0]))]
        return "ChowClass(" + " + ".join(bits) + ")"

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.one() * Fraction(other)
        if not isinstance(other, ChowClass) or other.ring is not self.ring:
            raise ValueError("classes live in different rings")
        return other

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def codim_part(self, k: int) -> "ChowClass":
        return ChowClass(self.ring, {key: v for key, v in self.coeffs.items()
                                     if self.ring.codim(key) == k})


class ProductProjectiveRing:
    """CH of a product of projective spaces P^{d_1} x ... x P^{d_k}."""

    def __init__(self, dims):
        self.dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in self.dims):
            raise ValueError("each factor must have dimension >= 1")
        self.top_dimension = sum(self.dims)

    def h(self, i: int) -> ChowClass:
        exp = [0] * len(self.dims)
        exp[i] = 1
        return ChowClass(self, {tuple(exp): Fraction(1)})

    def one(self) -> ChowClass:
        return ChowClass(self, {(0,) * len(self.dims): Fraction(1)})

    def zero(self) -> ChowClass:
        return ChowClass(self, {})

    def codim(self, key) -> int:
        return sum(key)

    def key_name(self, key) -> str:
        return "*".join(f"h{i+1}^{e}" for i, e in enumerate(key) if e) or "1"

    def mul_basis(self, k1, k2):
        k = tuple(a + b for a, b in zip(k1, k2))
        if any(e > d for e, d in zip(k, self.dims)):
            return {}
        return {k: Fraction(1)}

    def integrate(self, cls: ChowClass) -> Fraction:
        return cls.coeffs.get(self.dims, Fraction(0))


_DP_CODIM = {"1": 0, "L": 1, "E1": 1, "E2": 1, "E3": 1, "E4": 1, "pt": 2}


class DelPezzoRing:
    """CH of the quintic del Pezzo surface S = Bl_4 P^2.

    Basis {1; L, E1..E4; pt} with L^2 = pt, Ei^2 = -pt, L.Ei = 0.
    """

    picard_rank = 5
    top_dimension = 2

    def L(self) -> ChowClass:
        return ChowClass(self, {"L": Fraction(1)})

    def E(self, i: int) -> ChowClass:
        if not 1 <= i <= 4:
            raise ValueError("exceptional index out of range")
        return ChowClass(self, {f"E{i}": Fraction(1)})

    def pt(self) -> ChowClass:
        return ChowClass(self, {"pt": Fraction(1)})

    def one(self) -> ChowClass:
        return ChowClass(self, {"1": Fraction(1)})

    def zero(self) -> ChowClass:
        return ChowClass(self, {})

    def canonical(self) -> ChowClass:
        return -3 * self.L() + sum((self.E(i) for i in range(1, 5)), self.zero())

    def euler_number(self) -> int:
        # b0 + b2 + b4 with b2 = Picard rank
        return 2 + self.picard_rank

    def codim(self, key) -> int:
        return _DP_CODIM[key]

    def key_name(self, key) -> str:
        return key

    def mul_basis(self, k1, k2):
        c1, c2 = _DP_CODIM[k1], _DP_CODIM[k2]
        if c1 + c2 > 2:
            return {}
        if k1 == "1":
            return {k2: Fraction(1)}
        if k2 == "1":
            return {k1: Fraction(1)}
        if k1 == "L" and k2 == "L":
            return {"pt": Fraction(1)}
        if k1 == k2:  # Ei.Ei
            return {"pt": Fraction(-1)}
        return {}

    def integrate(self, cls: ChowClass) -> Fraction:
        return cls.coeffs.get("pt", Fraction(0))


@dataclass(frozen=True)
class ChernData:
    """Chern data of a rank-3 bundle on a surface; c3 is implicitly zero."""

    rank: int
    c1: ChowClass
    c2: Fraction


class ProjectiveBundleRing:
    """CH of the P^2-bundle P(M) -> S for a rank-3 bundle M on a surface.

    Basis monomials are zeta^a * s with a <= 2 and s a basis class of the
    base.  The sign convention is pinned so that the top self-intersection
    of zeta equals the Segre number c1(M)^2 - c2(M); concretely
    zeta^3 = c1.zeta^2 - c2.zeta.
    """

    top_dimension = 4

    def __init__(self, base: DelPezzoRing, chern: ChernData):
        if chern.rank != 3:
            raise ValueError("rank-3 bundle data required")
        self.base = base
        self.chern = chern

    def zeta(self) -> ChowClass:
        return ChowClass(self, {(1, "1"): Fraction(1)})

    def pull(self, cls: ChowClass) -> ChowClass:
        if cls.ring is not self.base:
            raise ValueError("can only pull back classes from the base")
        return ChowClass(self, {(0, k): v for k, v in cls.coeffs.items()})

    def one(self) -> ChowClass:
        return ChowClass(self, {(0, "1"): Fraction(1)})

    def zero(self) -> ChowClass:
        return ChowClass(self, {})

    def codim(self, key) -> int:
        a, s = key
        return a + self.base.codim(s)

    def key_name(self, key) -> str:
        a, s = key
        z = f"z^{a}*" if a else ""
        return z + s

    def mul_basis(self, k1, k2):
        a = k1[0] + k2[0]
        out: dict = {}
        for s, c in self.base.mul_basis(k1[1], k2[1]).items():
            for key, c2 in self._reduce(a, s).items():
                out[key] = out.get(key, Fraction(0)) + c * c2
        return out

    def _reduce(self, a: int, s: str):
        if a <= 2:
            return {(a, s): Fraction(1)}
        # zeta^3 = c1 zeta^2 - c2 zeta, applied recursively
        out: dict = {}
        for sk, sc in self.chern.c1.coeffs.items():
            for bs, bc in self.base.mul_basis(s, sk).items():
                for key, c in self._reduce(a - 1, bs).items():
                    out[key] = out.get(key, Fraction(0)) + sc * bc * c
        for bs, bc in self.base.mul_basis(s, "pt").items():
            for key, c in self._reduce(a - 2, bs).items():
                out[key] = out.get(key, Fraction(0)) - self.chern.c2 * bc * c
        return out

    def integrate(self, cls: ChowClass) -> Fraction:
        return cls.coeffs.get((2, "pt"), Fraction(0))


# -- ring constructors ---------------------------------------------------

def product_projective_ring(dims) -> ProductProjectiveRing:
    return ProductProjectiveRing(dims)


def del_pezzo_ring() -> DelPezzoRing:
    return DelPezzoRing()


def conic_bundle_chern_data(S: DelPezzoRing) -> ChernData:
    """The rank-3 bundle carrying the 4-nodal conic bundles: c1 = -K_S, c2 = 3."""
    return ChernData(rank=3, c1=-S.canonical(), c2=Fraction(3))


def projective_bundle_ring(base: DelPezzoRing, chern: ChernData) -> ProjectiveBundleRing:
    return ProjectiveBundleRing(base, chern)


# -- blow-up intersection table -------------------------------------------

def blowup_intersection_table() -> dict[tuple[int, int, int, int], Fraction]:
    """Top intersection numbers of (N, H, H1, H2) on the blown-up S x P^2.

    N is the sum of the four exceptional divisors over the curves
    E_i x {u_i}; H, H1, H2 pull back -K_S, L and the P^2 hyperplane.  The
    exceptional pushforward rules give N^4 = -4, N^3.H = 4, N^3.H1 =
    N^3.H2 = 0 and N^2.(anything pulled back) = 0; N-free monomials are
    computed on S x P^2.
    """
    S = del_pezzo_ring()
    mk = -S.canonical()
    table: dict[tuple[int, int, int, int], Fraction] = {}
    for n in range(5):
        for h in range(5 - n):
            for h1 in range(5 - n - h):
                h2 = 4 - n - h - h1
                key = (n, h, h1, h2)
                if n == 0:
                    if h2 != 2:
                        table[key] = Fraction(0)
                    else:
                        table[key] = ((mk ** h) * (S.L() ** h1)).integrate()
                elif n in (1, 2):
                    table[key] = Fraction(0)
                elif n == 3:
                    # N_i^3 . pullback(g) = deg(g restricted to E_i x {u_i})
                    if (h, h1, h2) == (1, 0, 0):
                        table[key] = Fraction(4)  # (-K_S).E_i = 1 per centre
                    else:
                        table[key] = Fraction(0)
                else:
                    table[key] = Fraction(-4)  # N_i^4 = -1 per centre
    return table


def intersection_number(table, divisors: list[dict[str, Fraction]]) -> Fraction:
    """Multiply four divisors written over {N, H, H1, H2} against the table."""
    if len(divisors) != 4:
        raise ValueError("need exactly four divisor factors")
    order = ("N", "H", "H1", "H2")
    total = Fraction(0)

    def rec(i, counts, coeff):
        nonlocal total
        if coeff == 0:
            return
        if i == 4:
            total += coeff * table[counts]
            return
        for j, name in enumerate(order):
            c = Fraction(divisors[i].get(name, 0))
            if c:
                nxt = list(counts)
                nxt[j] += 1
                rec(i + 1, tuple(nxt), coeff * c)

    rec(0, (0, 0, 0, 0), Fraction(1))
    return total


def quartic_self_intersection(table, divisor: dict[str, Fraction]) -> Fraction:
    return intersection_number(table, [divisor] * 4)


def verify_deg_h_two_ways() -> tuple[Fraction, Fraction]:
    """deg of the half-anticanonical double cover P -> P^4, two routes.

    Route one expands (H1 + H2 - N)^4 against the blow-up table; route two
    integrates zeta^4 in the projective bundle ring.  Both must equal 2.
    """
    table = blowup_intersection_table()
    blowup_route = quartic_self_intersection(
        table, {"H1": Fraction(1), "H2": Fraction(1), "N": Fraction(-1)})
    S = del_pezzo_ring()
    P = projective_bundle_ring(S, conic_bundle_chern_data(S))
    bundle_route = (P.zeta() ** 4).integrate()
    if blowup_route != bundle_route:
        raise ArithmeticError(
            f"inconsistent ring implementations: {blowup_route} vs {bundle_route}")
    return blowup_route, bundle_route


# -- canonical classes ------------------------------------------------------

def canonical_classes() -> tuple[dict[str, Fraction], dict[str, Fraction]]:
    """(K_P, K_B) as vectors over {H1, H2, N} on the bundle P.

    K_P comes from pushing the blow-up canonical class forward and
    eliminating H via the relation H = 3H1 - N (valid on P, where the
    contracted divisors are gone).  K_B is checked against adjunction for
    the base surface B of a pencil: K_B = (K_P + 4 zeta)|_B with
    zeta = H1 + H2 - N.
    """
    # upstairs: K = pullback(K_S x K_{P^2}) + 2N = -H - 3H2 + 2N
    kp = {"H": Fraction(-1), "H2": Fraction(-3), "N": Fraction(2)}
    kp = _eliminate_H(kp)
    zeta = {"H1": Fraction(1), "H2": Fraction(1), "N": Fraction(-1)}
    kb = {k: kp.get(k, Fraction(0)) + 4 * zeta.get(k, Fraction(0))
          for k in ("H1", "H2", "N")}
    if kb != zeta:
        raise ArithmeticError("adjunction K_B = zeta|_B fails")
    return kp, kb


def _eliminate_H(vec: dict[str, Fraction]) -> dict[str, Fraction]:
    h = vec.get("H", Fraction(0))
    out = {k: Fraction(v) for k, v in vec.items() if k != "H"}
    out["H1"] = out.get("H1", Fraction(0)) + 3 * h
    out["N"] = out.get("N", Fraction(0)) - h
    return {k: v for k, v in out.items() if v != 0}


def kb_squared() -> Fraction:
    """K_B^2 = 4 (H1+H2-N)^4 = 8 for the base surface of a pencil."""
    table = blowup_intersection_table()
    zeta = {"H1": Fraction(1), "H2": Fraction(1), "N": Fraction(-1)}
    return 4 * quartic_self_intersection(table, zeta)


# -- Riemann-Roch on P -------------------------------------------------------

def tangent_chern_classes(P: ProjectiveBundleRing) -> tuple[ChowClass, ...]:
    """c1..c4 of the tangent bundle of P, from the relative Euler sequence.

    c(T_P) = c(pi^* M^dual tensor O_P(1)) . c(pi^* T_S), with c1(T_S) =
    -K_S and c2(T_S) = e(S) pt.
    """
    S = P.base
    z = P.zeta()
    c1m = P.pull(P.chern.c1)
    c2m = P.chern.c2 * P.pull(S.pt())
    rel1 = 3 * z - c1m
    rel2 = 3 * z * z - 2 * z * c1m + c2m
    rel3 = z ** 3 - z * z * c1m + z * c2m  # vanishes by the bundle relation
    ts1 = P.pull(-S.canonical())
    ts2 = Fraction(S.euler_number()) * P.pull(S.pt())
    c1 = rel1 + ts1
    c2 = rel2 + rel1 * ts1 + ts2
    c3 = rel3 + rel2 * ts1 + rel1 * ts2
    c4 = rel3 * ts1 + rel2 * ts2
    return c1, c2, c3, c4


def todd_classes(c1: ChowClass, c2: ChowClass, c3: ChowClass,
                 c4: ChowClass) -> tuple[ChowClass, ...]:
    """Todd classes of a 4-fold, truncated at codimension 4."""
    td1 = c1 * Fraction(1, 2)
    td2 = (c1 * c1 + c2) * Fraction(1, 12)
    td3 = c1 * c2 * Fraction(1, 24)
    td4 = (-(c1 ** 4) + 4 * c1 * c1 * c2 + 3 * c2 * c2 + c1 * c3 - c4) \
        * Fraction(1, 720)
    return td1, td2, td3, td4


def hrr_chi(P: ProjectiveBundleRing, d: int) -> Fraction:
    """chi(O_P(d)) by Riemann-Roch: integral of ch(O_P(d)).Td(T_P)."""
    z = P.zeta()
    ch = P.one()
    zk = P.one()
    for k in range(1, 5):
        zk = zk * z
        ch = ch + zk * Fraction(d ** k, factorial(k))
    td = P.one() + sum(todd_classes(*tangent_chern_classes(P)), P.zero())
    return (ch * td).integrate()


def sections_formula(d: int) -> int:
    """h^0(P, O_P(d)) for d >= 0, via the double-cover eigenspace split.

    The degree-2 map to P^4 pushes the structure sheaf forward as
    O + O(-2), so sections of O_P(d) split as degree-d plus degree-(d-2)
    forms on P^4.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    return comb(d + 4, 4) + comb(d + 2, 4)


def koszul_chi_B(P: ProjectiveBundleRing | None = None) -> Fraction:
    """chi(O_B) for the base surface of a pencil in |O_P(2)|, via Koszul.

    B is the complete intersection of two members, so
    chi(O_B) = chi(O_P) - 2 chi(O_P(-2)) + chi(O_P(-4)).
    """
    if P is None:
        S = del_pezzo_ring()
        P = projective_bundle_ring(S, conic_bundle_chern_data(S))
    return hrr_chi(P, 0) - 2 * hrr_chi(P, -2) + hrr_chi(P, -4)


# -- Euler numbers and the pencil count --------------------------------------

def euler_numbers() -> dict[str, Fraction]:
    """Topological Euler numbers feeding the count of singular pencil members.

    e(S) = 7; the discriminant of a smooth member is a genus-6 curve C in
    |-2K_S| (adjunction), so e(C) = -10 and e(Q) = 2e(S) + e(C) = 4; a
    one-nodal discriminant raises e by 1, giving e(Q0) = 5.  e(P) = 3e(S)
    for the P^2-bundle and e(B) = c2(B) = 12 chi(O_B) - K_B^2 = 64.  The
    count of singular members of a pencil is e(P) + e(B) - 2 e(Q) = 77.
    """
    S = del_pezzo_ring()
    e_s = Fraction(S.euler_number())
    d = -2 * S.canonical()
    two_g_minus_2 = (d * (d + S.canonical())).integrate()
    g = (two_g_minus_2 + 2) / 2
    e_c = 2 - 2 * g
    e_q = 2 * e_s + e_c
    e_q0 = 2 * e_s + (e_c + 1)  # one node contracts a vanishing cycle
    e_p = 3 * e_s
    chi_b = koszul_chi_B()
    e_b = 12 * chi_b - kb_squared()
    delta = e_p + e_b - 2 * e_q
    return {
        "e_S": e_s, "g_C": g, "e_C": e_c, "e_Q": e_q, "e_Q0": e_q0,
        "e_P": e_p, "chi_B": chi_b, "K_B^2": kb_squared(), "e_B": e_b,
        "singular_members": delta,
    }
