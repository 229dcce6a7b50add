"""Divisor-class bookkeeping on the genus-6 Prym moduli side.

Everything here is finite-dimensional exact linear algebra: divisor classes
are vectors over a fixed ordered basis, curve classes are the dual vectors
of intersection numbers, and each named operation returns one specific
pullback or pairing.  The enumerative inputs (77 singular members, 32 double
lines, lambda-degree 18) are wired in from the intersection-theory module,
never retyped.

One modelling point deserves emphasis: the theta pullback is only known up
to boundary terms that are never written down.  Those are carried as an
explicit "unknown boundary" marker, and any pairing against a marked class
demands that the curve be declared orthogonal to the marker first.  That
turns a silent assumption into an auditable one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

from . import chow

#: ordered basis of the divisor-class ledger: Hodge class, the three
#: boundary pieces of the Prym compactification, and the five point classes
#: on the universal-curve product
R6_BASIS = ("lambda", "delta0_prime", "delta0_dblprime", "delta0_ram",
            "psi1", "psi2", "psi3", "psi4", "psi5")

#: quoted, not derivable here: the pencil avoids the second boundary piece
E_DELTA0_DBLPRIME = Fraction(0)


class MarkerPairingError(RuntimeError):
    """Pairing a marked class with a curve not declared marker-orthogonal."""


@dataclass(frozen=True)
class DivClassR6:
    """Divisor class over R6_BASIS, optionally carrying the unknown-boundary
    marker for omitted boundary terms."""

    coeffs: Mapping[str, Fraction]
    unknown_boundary: bool = False

    def __post_init__(self):
        bad = set(self.coeffs) - set(R6_BASIS)
        if bad:
            raise ValueError(f"unknown basis elements: {sorted(bad)}")
        clean = {k: Fraction(v) for k, v in self.coeffs.items() if v != 0}
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, key: str) -> Fraction:
        if key not in R6_BASIS:
            raise KeyError(key)
        return self.coeffs.get(key, Fraction(0))

    def __add__(self, other: "DivClassR6") -> "DivClassR6":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return DivClassR6(out, self.unknown_boundary or other.unknown_boundary)

    def __sub__(self, other: "DivClassR6") -> "DivClassR6":
        return self + (-1) * other

    def __mul__(self, scalar) -> "DivClassR6":
        c = Fraction(scalar)
        return DivClassR6({k: v * c for k, v in self.coeffs.items()},
                          self.unknown_boundary)

    __rmul__ = __mul__

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self[k] for k in R6_BASIS)


@dataclass(frozen=True)
class DivClassA6:
    """Divisor class a*lambda1 - b*D on the perfect-cone compactification."""

    lambda1: Fraction
    boundary: Fraction


@dataclass(frozen=True)
class CurveClass:
    """Intersection numbers of a 1-cycle against R6_BASIS."""

    numbers: Mapping[str, Fraction]
    provenance: str
    marker_orthogonal: bool = False

    def __post_init__(self):
        bad = set(self.numbers) - set(R6_BASIS)
        if bad:
            raise ValueError(f"unknown basis elements: {sorted(bad)}")
        object.__setattr__(
            self, "numbers",
            {k: Fraction(v) for k, v in self.numbers.items() if v != 0})

    def __getitem__(self, key: str) -> Fraction:
        if key not in R6_BASIS:
            raise KeyError(key)
        return self.numbers.get(key, Fraction(0))

    def scaled(self, factor, provenance: str | None = None) -> "CurveClass":
        c = Fraction(factor)
        return CurveClass({k: v * c for k, v in self.numbers.items()},
                          provenance or f"{self.provenance} x {factor}",
                          self.marker_orthogonal)

    def pair(self, div: DivClassR6) -> Fraction:
        if div.unknown_boundary and not self.marker_orthogonal:
            raise MarkerPairingError(
                "class carries unknown boundary terms; declare the curve "
                "marker-orthogonal before pairing")
        return sum((self[k] * v for k, v in div.coeffs.items()), Fraction(0))


# -- pullback formulas -------------------------------------------------------

def pullback_delta0() -> DivClassR6:
    """Pullback of the boundary of M6 along the forgetful double-cover map:
    the three boundary pieces, the ramified one with multiplicity two."""
    return DivClassR6({"delta0_prime": 1, "delta0_dblprime": 1,
                       "delta0_ram": 2})


def prym_pullback_lambda() -> DivClassR6:
    """Pullback of the Hodge class lambda_1 along the Prym map."""
    return DivClassR6({"lambda": 1, "delta0_ram": Fraction(-1, 4)})


def ap_psi_coefficients(g: int, restricted: bool = False) -> tuple[Fraction, ...]:
    """Point-class coefficients of the Abel-Prym theta pullback, genus g even.

    Full variant: 1/2 on the first g-2 points and 2 on point g-1.
    Restricted variant (only g-2 marked points): the 1/2 coefficients alone.
    """
    if g % 2 != 0 or g < 4:
        raise ValueError("the formula requires even genus >= 4")
    half = tuple(Fraction(1, 2) for _ in range(g - 2))
    return half if restricted else half + (Fraction(2),)


def ap_pullback_theta(restricted: bool = False, g: int = 6) -> DivClassR6:
    """Theta pullback as a marked divisor class on the genus-6 ledger.

    The lambda and boundary coefficients are exactly zero; the omitted
    boundary corrections are the unknown-boundary marker.
    """
    if g != 6:
        raise ValueError("only the genus-6 basis is wired")
    psis = ap_psi_coefficients(g, restricted)
    coeffs = {f"psi{j + 1}": c for j, c in enumerate(psis)}
    return DivClassR6(coeffs, unknown_boundary=True)


@dataclass(frozen=True)
class BoundaryPullback:
    """The boundary divisor of A6-bar pulled back: -2 theta + delta0'."""

    theta_coeff: Fraction
    tail: DivClassR6

    def expanded(self, restricted: bool = False) -> DivClassR6:
        return self.theta_coeff * ap_pullback_theta(restricted) + self.tail


def pullback_boundary_D6() -> BoundaryPullback:
    return BoundaryPullback(theta_coeff=Fraction(-2),
                            tail=DivClassR6({"delta0_prime": 1}))


# -- enumerative inputs ------------------------------------------------------

def chi_of_Y_chain() -> dict:
    """chi(O) of the blown-up family surface over the pencil, step by step.

    The surface Y sits in P^2 x P^1 in class 6h1 + 3h2; adjunction gives
    omega_Y of class (3,1), whose sections are the 20 bidegree-(3,1) forms.
    Four of the exceptional (-1)-lines of the actual family each absorb a
    pencil of sections, leaving h^0(omega) = 12 and chi(O) = 1 - 0 + 12 = 13.
    """
    ring = chow.product_projective_ring((2, 1))
    h1, h2 = ring.h(0), ring.h(1)
    canonical = -3 * h1 - 2 * h2
    surface_class = 6 * h1 + 3 * h2
    omega = canonical + surface_class
    if omega != 3 * h1 + h2:
        raise ArithmeticError("adjunction gives an unexpected dualizing class")
    h0_omega_ambient = _h0_product((2, 1), (3, 1))
    if h0_omega_ambient != 20:
        raise ArithmeticError("section count of the (3,1) system is off")
    correction = 4 * _h0_product((1,), (1,))  # one pencil per contracted line
    h0_omega = h0_omega_ambient - correction
    chi = 1 - 0 + h0_omega  # h^1(O) = 0: the family is a rational surface
    return {"omega_class": (Fraction(3), Fraction(1)),
            "h0_omega_ambient": Fraction(h0_omega_ambient),
            "h0_omega": Fraction(h0_omega), "chi": Fraction(chi)}


def _h0_product(dims, degs) -> int:
    out = 1
    for n, d in zip(dims, degs):
        out *= comb(n + d, n)
    return out


def lambda_degree_from_family(chi: Fraction | None = None,
                              g: int = 6) -> Fraction:
    """Degree of lambda on the pencil: chi(O of the family) + g - 1."""
    if chi is None:
        chi = chi_of_Y_chain()["chi"]
    return Fraction(chi) + g - 1


def solve_double_line_count(e_lambda: Fraction | None = None,
                            e_delta0_prime: Fraction | None = None,
                            e_delta0_dblprime: Fraction = E_DELTA0_DBLPRIME,
                            unreduced: bool = False) -> Fraction:
    """Count of double-line members of the pencil, from the vanishing of the
    Gieseker-Petri-type relation 47 e.lambda - 6 e.delta0' - 12 e.delta0ram = 0
    (or its unreduced double, as a cross-check)."""
    if e_lambda is None:
        e_lambda = lambda_degree_from_family()
    if e_delta0_prime is None:
        e_delta0_prime = chow.euler_numbers()["singular_members"]
    if e_lambda <= 0:
        raise ValueError("degenerate family: lambda-degree must be positive")
    if unreduced:
        return (94 * e_lambda - 12 * (e_delta0_prime + e_delta0_dblprime)) \
            / Fraction(24)
    return (47 * e_lambda - 6 * (e_delta0_prime + e_delta0_dblprime)) \
        / Fraction(12)


def degree_nine_lemma() -> Fraction:
    """The key intersection number on P^2 x P^2 x P^2 behind the psi-degree:
    (2h1 + h2 + h3)^3 . 3h3 . h1^2 = 9."""
    ring = chow.product_projective_ring((2, 2, 2))
    h1, h2, h3 = ring.h(0), ring.h(1), ring.h(2)
    cls = (2 * h1 + h2 + h3) ** 3 * (3 * h3) * h1 * h1
    return cls.integrate()


def psi_degree_via_Z(l_h1: Fraction = Fraction(0),
                     l_h3: Fraction = Fraction(3)) -> Fraction:
    """Degree of each psi class on the sweeping curve, via the threefold Z.

    Z is a complete intersection in P^2 x P^2 x P^2 of three divisors of
    multidegree (2,1,1) and one of (0,0,3); adjunction gives omega_Z of
    multidegree (3,0,3).  Pairing against a section line with degrees
    (L.h1, L.h3) = (0, 3) gives psi = 3*0 + 3*3 = 9.
    """
    ring = chow.product_projective_ring((2, 2, 2))
    h = [ring.h(i) for i in range(3)]
    canonical = -3 * h[0] - 3 * h[1] - 3 * h[2]
    ci = 3 * (2 * h[0] + h[1] + h[2]) + 3 * h[2]
    omega = canonical + ci
    if omega != 3 * h[0] + 3 * h[2]:
        raise ArithmeticError("adjunction gives an unexpected dualizing class")
    return omega.coeffs[(1, 0, 0)] * l_h1 + omega.coeffs[(0, 0, 1)] * l_h3


# -- curve classes -----------------------------------------------------------

def pencil_curve_numbers() -> dict[str, CurveClass]:
    """The three curve classes of the story, with wired-in inputs.

    single: one pencil of conic bundles; its boundary numbers are the
    computed counts (77 singular members, 32 double lines) and its
    lambda-degree comes from the chi-chain.
    triple: the same pencil traced three times around the nodal-cubic base.
    sweeping: the triple curve on the universal-curve product, where each of
    the five point classes has degree 9.
    """
    e_lambda = lambda_degree_from_family()
    e_prime = chow.euler_numbers()["singular_members"]
    e_ram = solve_double_line_count(e_lambda, e_prime)
    single = CurveClass(
        {"lambda": e_lambda, "delta0_prime": e_prime,
         "delta0_dblprime": E_DELTA0_DBLPRIME, "delta0_ram": e_ram},
        provenance="pencil of conic bundles")
    triple = single.scaled(3, "pencil traced over the nodal cubic")
    psi = {f"psi{j}": psi_degree_via_Z() for j in range(1, 6)}
    sweeping = CurveClass(
        dict(triple.numbers, **psi),
        provenance="sweeping curve on the universal-curve product",
        marker_orthogonal=True)  # assumed orthogonal to omitted boundary terms
    return {"single": single, "triple": triple, "sweeping": sweeping}


def slope_bound(variant: str = "full",
                curve: CurveClass | None = None) -> tuple[Fraction, Fraction, Fraction]:
    """(degree on lambda1, degree on the boundary, slope bound).

    full: sweeping curve against the boundary pullback on the whole space;
    u4: the four-point restricted variant.  The bound is the ratio, valid
    because the curve sweeps a divisor and so meets every effective divisor
    not containing it nonnegatively.
    """
    if variant not in ("full", "u4"):
        raise ValueError("variant must be 'full' or 'u4'")
    if curve is None:
        curve = pencil_curve_numbers()["sweeping"]
    lam = curve.pair(prym_pullback_lambda())
    boundary = curve.pair(pullback_boundary_D6().expanded(
        restricted=(variant == "u4")))
    if lam <= 0:
        raise ValueError("nonpositive lambda-degree: no slope bound")
    return lam, boundary, boundary / lam


def general_type_threshold_report(g: int = 6) -> dict:
    """Compare the slope bound with the general-type threshold g + 1."""
    bound = slope_bound("full")[2]
    return {"bound": bound, "threshold": Fraction(g + 1),
            # a lower bound below the threshold decides nothing either way
            "implies_general_type": False,
            "below_threshold": bound < g + 1}
