"""Milnor and Tyurina numbers of hypersurface germs at the origin."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonIsolated, NotVanishingAtOrigin
from .groebner.ideals import ideal, local_standard_basis, quotient_dimension
from .poly import LOCAL, Polynomial, jacobian

INFINITE = math.inf


@dataclass(frozen=True)
class SingularityReport:
    milnor: int | float
    tyurina: int | float
    quasi_homogeneous: bool | str   # "undetermined" when either number is infinite
    method: dict


def _check_origin(f: Polynomial):
    if f.constant_coefficient() != 0:
        raise NotVanishingAtOrigin(f"{f} does not vanish at the origin")


def _local_length(f, gens):
    basis = local_standard_basis(ideal(f.ring, gens, LOCAL), LOCAL)
    return quotient_dimension(basis), basis.info


def milnor_number(f: Polynomial, *, with_info=False):
    """Length of the local algebra of the Jacobian ideal; ``math.inf`` if not isolated."""
    _check_origin(f)
    mu, info = _local_length(f, jacobian(f))
    return (mu, info) if with_info else mu


def tyurina_number(f: Polynomial, *, with_info=False):
    """Length of the local algebra of (f, partial derivatives)."""
    _check_origin(f)
    tau, info = _local_length(f, [f] + jacobian(f))
    return (tau, info) if with_info else tau


def quasi_homogeneity_test(f: Polynomial) -> SingularityReport:
    """An isolated germ is quasi-homogeneous in some coordinates exactly when mu == tau."""
    mu, mu_info = milnor_number(f, with_info=True)
    if mu == INFINITE:
        raise NonIsolated(f"{f} has a non-isolated singularity at the origin")
    tau, tau_info = tyurina_number(f, with_info=True)
    return SingularityReport(mu, tau, mu == tau, {"milnor": mu_info, "tyurina": tau_info})


def report(f: Polynomial) -> SingularityReport:
    """Like :func:`quasi_homogeneity_test` but reports non-isolated germs instead of raising."""
    mu, mu_info = milnor_number(f, with_info=True)
    tau, tau_info = tyurina_number(f, with_info=True)
    qh = "undetermined" if INFINITE in (mu, tau) else mu == tau
    return SingularityReport(mu, tau, qh, {"milnor": mu_info, "tyurina": tau_info})
