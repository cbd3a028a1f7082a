"""Invariant representatives of invariant divisor classes.

Given ``D`` whose class is fixed by ``G``, the pipeline is

1. ``f_g`` with ``div f_g = gD - D`` (normalized so ``f_g(v0) = 0``);
2. ``c(g, h) = f_gh - f_g - g f_h``, a constant because its divisor is 0;
3. ``psi`` averaging ``c`` so that ``d psi = c``;
4. ``f'_g = f_g + s psi(g)``, an honest 1-cocycle in M(X);
5. ``F = -max_g f'_g`` with ``h F - F = f'_h``;
6. ``D' = D - div F``, which is ``G``-invariant and equivalent to ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .automorphism import AutGroup
from .cohomology import Cocycle1F, Cocycle2R, h90_witness, real_2cocycle_witness
from .curve import Curve
from .divisor import Divisor, act_on_divisor, degree
from .errors import BaseMismatch, DegreeNonzero, NotACocycle, NotInvariantClass, NotPrincipal
from .plfunction import PLFunction, constant, div, pullback
from .principal import is_equivalent, solve_principal


@dataclass(frozen=True)
class ClassInvariance:
    invariant: bool
    witnesses: tuple[PLFunction, ...] = ()
    element: int | None = None
    certificate: object = None


@dataclass(frozen=True)
class InvariantizationReport:
    divisor: Divisor
    group: AutGroup
    witnesses: tuple[PLFunction, ...]
    constants: dict[tuple[int, int], Fraction]
    psi: tuple[Fraction, ...]
    sign: int
    adjusted: tuple[PLFunction, ...]
    average: PLFunction
    invariant_divisor: Divisor
    checks: dict[str, bool] = field(default_factory=dict)


def is_class_invariant(curve: Curve, group: AutGroup, d: Divisor) -> ClassInvariance:
    """Whether ``gD ~ D`` for all ``g``; on success carries the family ``f_g``."""
    if group.curve != curve or d.curve != curve:
        raise BaseMismatch("group, divisor and curve must share one base")
    fs = []
    for i, g in enumerate(group.elements):
        delta = act_on_divisor(g, d) - d
        if delta.is_zero():
            fs.append(constant(curve, 0))
            continue
        try:
            fs.append(solve_principal(curve, delta))
        except NotPrincipal as exc:
            return ClassInvariance(False, element=i, certificate=exc.certificate)
    return ClassInvariance(True, tuple(fs))


def _constant_value(f: PLFunction) -> Fraction:
    assert f.is_constant(), "difference of witnesses is not constant"
    return next(iter(f.values.values()))


def symmetrize_divisor(curve: Curve, group: AutGroup, d: Divisor) -> InvariantizationReport:
    """Run the full pipeline; raises :class:`NotInvariantClass` if ``[D]`` is not fixed."""
    verdict = is_class_invariant(curve, group, d)
    if not verdict.invariant:
        raise NotInvariantClass(
            f"group element {verdict.element} moves the class of the divisor",
            verdict.element,
            verdict.certificate,
        )
    fs = verdict.witnesses
    n = group.order
    act = {(g, h): pullback(group.elements[g], fs[h]) for g in range(n) for h in range(n)}

    c = {(g, h): _constant_value(fs[group.mul(g, h)] - fs[g] - act[g, h]) for g in range(n) for h in range(n)}
    psi = tuple(real_2cocycle_witness(Cocycle2R(group, c)))

    adjusted = None
    sign = 0
    # The sign of the correction depends on the coboundary convention; test both.
    for s in (1, -1):
        candidate = tuple(f + constant(curve, s * psi[g]) for g, f in enumerate(fs))
        try:
            cocycle = Cocycle1F(group, candidate)
        except NotACocycle:
            continue
        adjusted, sign = candidate, s
        break
    assert adjusted is not None, "no sign turns the witness family into a cocycle"

    average = h90_witness(cocycle)
    result = d - div(average)

    checks = {
        "witnesses_principal": all(div(f) == act_on_divisor(g, d) - d for g, f in zip(group.elements, fs)),
        "constants_cocycle": True,
        "adjusted_cocycle": True,
        "hilbert90": all(pullback(g, average) - average == adjusted[i] for i, g in enumerate(group.elements)),
        "invariant": all(act_on_divisor(g, result) == result for g in group.elements),
        "equivalent": is_equivalent(curve, d, result).equivalent,
        "degree_preserved": degree(result) == degree(d),
    }
    assert all(checks.values()), f"pipeline check failed: {checks}"
    return InvariantizationReport(d, group, fs, c, psi, sign, adjusted, average, result, checks)


def symmetrize_degree0(curve: Curve, group: AutGroup, d: Divisor) -> InvariantizationReport:
    if degree(d) != 0:
        raise DegreeNonzero(f"divisor has degree {degree(d)}, expected 0", degree=degree(d))
    report = symmetrize_divisor(curve, group, d)
    assert degree(report.invariant_divisor) == 0
    return report
