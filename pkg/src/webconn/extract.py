"""Extracted sub-webs, Blaschke curvatures and the trace formula."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .assoc import fundamental_form, linearization_polynomial
from .conn import trace_curvature
from .errors import ConstructionError, DegreeError, SlopeRequiredError
from .kernel import Form2, exterior_derivative
from .kernel import ppoly
from .webdef import SlopeWeb, WebEquation, from_slopes, monic


@dataclass(frozen=True)
class ExtractionReport:
    triples: tuple
    blaschke: tuple
    sum: Form2
    k1_form: Form2
    residual: Form2

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def _slopes(sw):
    if isinstance(sw, WebEquation):
        raise SlopeRequiredError("this operation needs a web given by explicit slopes")
    return sw.slopes


def extract_subweb(sw: SlopeWeb, subset) -> SlopeWeb:
    """Sub-web on the slopes with the given 0-based indices."""
    slopes = _slopes(sw)
    idx = sorted(set(subset))
    if len(idx) < 3:
        raise DegreeError(f"a sub-web needs at least 3 slopes, got {len(idx)}")
    if idx[0] < 0 or idx[-1] >= len(slopes):
        raise DegreeError(f"slope index out of range for a {len(slopes)}-web")
    return from_slopes([slopes[i] for i in idx], sw.web.base_point)


def blaschke_curvature(sw3) -> Form2:
    web = sw3.web if isinstance(sw3, SlopeWeb) else sw3
    if web.d != 3:
        raise DegreeError(f"Blaschke curvature is defined for 3-webs, got d = {web.d}")
    return exterior_derivative(fundamental_form(web).alpha)


def trace_formula_check(sw: SlopeWeb) -> ExtractionReport:
    """Compare k_1 with the sum of the Blaschke curvatures of all 3-subwebs."""
    slopes = _slopes(sw)
    triples = tuple(combinations(range(len(slopes)), 3))
    curv = tuple(blaschke_curvature(extract_subweb(sw, t)) for t in triples)
    total = Form2()
    for c in curv:
        total = total + c
    k1 = Form2(trace_curvature(sw.web))
    return ExtractionReport(triples, curv, total, k1, k1 - total)


def is_hexagonal(sw: SlopeWeb) -> bool:
    slopes = _slopes(sw)
    return all(blaschke_curvature(extract_subweb(sw, t)).is_zero()
               for t in combinations(range(len(slopes)), 3))


def extracted_relations_4web(sw: SlopeWeb, k: int) -> dict:
    """Residuals of the relations tying the 4-web to its 3-subweb without slope k (0-based)."""
    if sw.d != 4:
        raise DegreeError(f"extracted relations are stated for 4-webs, got d = {sw.d}")
    slopes = _slopes(sw)
    pk = slopes[k]
    # monic presentations, so that F = (p - p_k) F_k holds on the nose
    whole = monic(sw.web)
    sub = monic(extract_subweb(sw, [i for i in range(4) if i != k]).web)
    if ppoly.sub(whole.p_coeffs, ppoly.mul(ppoly.trim([-pk, 1]), sub.p_coeffs)):
        raise ConstructionError("extracted presentation does not divide the parent")
    al = fundamental_form(whole)
    alk = fundamental_form(sub)
    V = [-e for e in linearization_polynomial(whole).P]
    v1, v2, v3 = V[0], V[1], V[2]
    return {
        "A2": alk.A2 - (al.A2 - v2 - v1 * pk),
        "A1": alk.A1 - (-pk.diff("y") + al.A1 - v3 - v2 * pk - v1 * pk * pk),
        "V": -ppoly.evaluate(list(reversed(V)), pk) - (pk.diff("x") + pk * pk.diff("y")),
    }
