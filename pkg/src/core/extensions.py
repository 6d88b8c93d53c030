"""Owen and Lovasz extensions of pseudo-Boolean functions and their gap-2 templates."""

import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Tuple, Union

from src.core.exceptions import (
    ArityGapUndefined,
    IndexRangeError,
    InessentialVariableError,
    NotOrderPreserving,
)
from src.core.function_algebra import arity_gap, reduce_to_essential
from src.core.order_theory import is_order_preserving
from src.core.set_functions import (
    essential_from_mobius,
    from_set_function,
    mobius,
    multilinear_value,
    to_set_function,
    zeta,
)
from src.models.extension_model import (
    LovaszExtension,
    LovaszForm,
    LovaszGap2Match,
    OwenExtension,
    RationalPoint,
    SimplexId,
    SimplexLinearForm,
)
from src.models.function_model import FiniteFunction
from src.models.poset_model import chain
from src.models.set_function_model import MobiusCoefficients, subset_of

logger = logging.getLogger(__name__)

Extension = Union[OwenExtension, LovaszExtension]


def owen_extension(f: FiniteFunction) -> OwenExtension:
    return OwenExtension(mobius(to_set_function(f)))


def lovasz_extension(f: FiniteFunction) -> LovaszExtension:
    return LovaszExtension(mobius(to_set_function(f)))


def _check_dimension(extension: Extension, x: RationalPoint) -> None:
    if len(x) != extension.n:
        raise IndexRangeError(f"Point {x} has {len(x)} coordinates, extension has {extension.n}")


def eval_owen(P: OwenExtension, x: RationalPoint) -> Fraction:
    _check_dimension(P, x)
    return multilinear_value(P.coefficients, x.coordinates)


def eval_lovasz(F: LovaszExtension, x: RationalPoint) -> Fraction:
    _check_dimension(F, x)
    total = Fraction(0)
    for mask, coefficient in enumerate(F.coefficients.values):
        if coefficient == 0:
            continue
        members = subset_of(mask)
        total += coefficient * (min(x[i - 1] for i in members) if members else 1)
    return total


def restrict_to_cube(extension: Extension) -> FiniteFunction:
    """The pseudo-Boolean function whose extension this is."""
    return from_set_function(zeta(extension.coefficients))


def simplex_of(x: RationalPoint) -> SimplexId:
    """sigma with x_sigma(1) <= ... <= x_sigma(n); ties broken by coordinate index."""
    return SimplexId(tuple(sorted(range(1, len(x) + 1), key=lambda k: (x[k - 1], k))))


def simplex_linear_form(F: LovaszExtension, sigma: SimplexId) -> SimplexLinearForm:
    """The affine piece of F on the simplex of sigma: v(S_k) - v(S_k+1) on x_sigma(k)."""
    if sigma.n != F.n:
        raise IndexRangeError(f"Simplex of dimension {sigma.n} for an extension in dimension {F.n}")
    v = zeta(F.coefficients)
    suffixes = sigma.suffix_masks()
    weights = [Fraction(0)] * F.n
    for k, variable in enumerate(sigma.permutation):
        weights[variable - 1] = v[suffixes[k]] - v[suffixes[k + 1]]
    return SimplexLinearForm(sigma, v[0], tuple(weights))


def essential_in_extension(F: LovaszExtension, i: int) -> bool:
    return essential_from_mobius(F.coefficients, i)


def essential_in_owen(P: OwenExtension, i: int) -> bool:
    return essential_from_mobius(P.coefficients, i)


def gap_lovasz(F: LovaszExtension) -> int:
    return arity_gap(restrict_to_cube(F))


def gap_owen(P: OwenExtension) -> int:
    return arity_gap(restrict_to_cube(P))


# Gap-2 templates. Each entry: admissible arity (None for any n >= 2), parameter recovery
# from the unpermuted coefficients, and instantiation from (a, b, c).

Params = Tuple[Fraction, Fraction, Optional[Fraction]]


def _form_i(n: int, a: Fraction, b: Fraction, c: Optional[Fraction]) -> Dict[int, Fraction]:
    # free constant a; every nonempty S carries ((a - b) / 2) * (-2)^|S|
    scale = (a - b) / 2
    entries = {mask: scale * (-2) ** bin(mask).count("1") for mask in range(1, 1 << n)}
    entries[0] = a
    return entries


def _form_ii(n: int, a: Fraction, b: Fraction, c: Optional[Fraction]) -> Dict[int, Fraction]:
    return {0: a, 0b01: b - a, 0b11: a - b}


def _form_iii(n: int, a: Fraction, b: Fraction, c: Optional[Fraction]) -> Dict[int, Fraction]:
    return {0: a, 0b011: b - a, 0b101: b - a, 0b110: b - a, 0b111: 2 * (a - b)}


def _form_iv(n: int, a: Fraction, b: Fraction, c: Optional[Fraction]) -> Dict[int, Fraction]:
    return {0: a, 0b001: b - a, 0b010: b - a,
            0b011: a - b, 0b101: a - b, 0b110: a - b, 0b111: 2 * (b - a)}


def _form_v(n: int, a: Fraction, b: Fraction, c: Optional[Fraction]) -> Dict[int, Fraction]:
    return {0: a, 0b01: b - a, 0b10: c - a, 0b11: 2 * a - b - c}


def _recover_ab(pivot: int) -> Callable[[MobiusCoefficients], Params]:
    return lambda m: (m[0], m[0] + m[pivot], None)


_TEMPLATES = (
    (LovaszForm.FORM_I, None, _recover_ab(0b001), _form_i),
    (LovaszForm.FORM_II, 2, _recover_ab(0b01), _form_ii),
    (LovaszForm.FORM_III, 3, _recover_ab(0b011), _form_iii),
    (LovaszForm.FORM_IV, 3, _recover_ab(0b001), _form_iv),
    (LovaszForm.FORM_V, 2, lambda m: (m[0], m[0] + m[0b01], m[0] + m[0b10]), _form_v),
)


def lovasz_template(form: LovaszForm, n: int, a: Fraction, b: Fraction,
                    c: Optional[Fraction] = None) -> MobiusCoefficients:
    """Coefficients of a template in its own variable order."""
    for name, arity, _, build in _TEMPLATES:
        if name == form:
            if arity is not None and arity != n:
                raise IndexRangeError(f"{form.value} lives in dimension {arity}, not {n}")
            if form == LovaszForm.FORM_V and c is None:
                raise ValueError("form_v needs the parameter c")
            return MobiusCoefficients.from_mapping(n, build(n, Fraction(a), Fraction(b), c))
    raise ValueError(f"Unknown template {form!r}")


def _inverse(permutation: Tuple[int, ...]) -> Tuple[int, ...]:
    inverse = [0] * len(permutation)
    for position, image in enumerate(permutation, start=1):
        inverse[image - 1] = position
    return tuple(inverse)


def _degenerate(form: LovaszForm, params: Params) -> bool:
    a, b, c = params
    return a == b and (form != LovaszForm.FORM_V or a == c)


def _template_matches(m: MobiusCoefficients) -> Iterator[LovaszGap2Match]:
    n = m.n
    for form, arity, recover, _ in _TEMPLATES:
        if arity is not None and arity != n:
            continue
        # form (i) is symmetric: a match under any permutation is a match under the identity
        permutations = ([tuple(range(1, n + 1))] if form == LovaszForm.FORM_I
                        else itertools.permutations(range(1, n + 1)))
        for permutation in permutations:
            unpermuted = m.permuted(_inverse(permutation))
            params = recover(unpermuted)
            if _degenerate(form, params):
                continue
            if lovasz_template(form, n, *params) == unpermuted:
                yield LovaszGap2Match(form, params[0], params[1], params[2], permutation)


def _check_fully_essential(m: MobiusCoefficients) -> None:
    inessential = [i for i in range(1, m.n + 1) if not essential_from_mobius(m, i)]
    if inessential:
        raise InessentialVariableError(f"Variables {inessential} are inessential in the extension")
    if m.n < 2:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")


def classify_lovasz_gap2(F: LovaszExtension) -> Optional[LovaszGap2Match]:
    """First template among forms (i) to (v), over permutations in lexicographic order."""
    _check_fully_essential(F.coefficients)
    match = next(_template_matches(F.coefficients), None)
    if (match is not None) != (gap_lovasz(F) == 2):
        logger.warning(f"Template match {match} disagrees with the gap of the restriction")
    return match


def classify_owen_gap2(P: OwenExtension) -> Optional[LovaszGap2Match]:
    """The product-form templates share the Moebius coefficients of the Lovasz ones."""
    _check_fully_essential(P.coefficients)
    return next(_template_matches(P.coefficients), None)


def classify_nondecreasing_lovasz(F: LovaszExtension) -> Optional[Tuple[Fraction, Fraction]]:
    """(a, b) when F is a + (b - a) times the ternary median extension, up to its variables.

    Monotonicity of F is read off its restriction to the cube.
    """
    f = restrict_to_cube(F)
    if not is_order_preserving(f, chain(2)):
        raise NotOrderPreserving("The extension is not nondecreasing on the cube")
    if f.is_constant():
        return None
    reduced, _ = reduce_to_essential(f)
    if reduced.arity != 3:
        return None
    match = classify_lovasz_gap2(lovasz_extension(reduced))
    if match is not None and match.template == LovaszForm.FORM_III:
        return match.a, match.b
    return None
