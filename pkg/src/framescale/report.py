"""Assemble the per-frame analysis report."""

from __future__ import annotations

from .frames import (
    DEFAULT_MAX_N,
    Frame,
    complement_property,
    is_full_spark,
    outer_products_independent,
    outer_spark,
    spark,
    tightness,
)
from .hermitian import DEFAULT_TOL, Tolerances
from .scaling import (
    ScalingPolytope,
    ScalingStatus,
    decompose_scaling,
    enumerate_minimal_scalings,
    scaling_outcome,
    verify_scaling,
)


def analyze(
    f: Frame,
    tol: Tolerances = DEFAULT_TOL,
    max_n: int = DEFAULT_MAX_N,
    force: bool = False,
    skip_spark: bool = False,
    skip_complement: bool = False,
) -> dict:
    """Run every diagnostic on ``f`` and return a JSON-ready dict in fixed key order.

    Scalings are reported in the coordinates of ``f`` itself (not normalized).
    """
    info = tightness(f, tol)
    independent = outer_products_independent(f, tol)
    outcome = scaling_outcome(f, tol, max_n, force)

    unique = None
    minimal = None
    residuals: dict = {}
    if outcome.status is ScalingStatus.UNIQUE:
        unique = outcome.scaling.weights.tolist()
        residuals["unique_scaling"] = verify_scaling(f, outcome.scaling, tol)[0]
    elif outcome.polytope is not None:
        scalings = outcome.polytope.scalings()
        minimal = [s.weights.tolist() for s in scalings]
        residuals["minimal_scalings"] = [verify_scaling(f, s, tol)[0] for s in scalings]
    if "residual" in outcome.diagnostics:
        residuals["linear_system"] = outcome.diagnostics["residual"]

    frame_meta = {"field": f.field.value, "d": f.d, "n": f.n}
    if f.labels is not None:
        frame_meta["labels"] = list(f.labels)

    report = {
        "frame": frame_meta,
        "tightness": info.as_dict(),
        "outer_products_independent": independent,
        "scalable": outcome.scalable,
        "status": outcome.status.value,
        "unique_scaling": unique,
        "minimal_scalings": minimal,
        "spark": None,
        "full_spark": None,
        "complement_property": None,
        "outer_spark": None,
        "tolerances": tol.as_dict(),
        "residuals": residuals,
    }
    if not skip_spark:
        report["spark"] = spark(f, max_n, tol, force)
        report["full_spark"] = is_full_spark(f, max_n, tol, force)
        report["outer_spark"] = outer_spark(f, max_n, tol, force)
    if not skip_complement:
        report["complement_property"] = complement_property(f, max_n, tol, force)
    return report


def vertices_report(P: ScalingPolytope, tol: Tolerances = DEFAULT_TOL) -> dict:
    return {
        "feasible": P.feasible,
        "n": P.n,
        "d": P.d,
        "vertices": [
            {
                "support": list(s),
                "polytope_point": v.weights.tolist(),
                "scaling": P.scaling(k).weights.tolist(),
            }
            for k, (s, v) in enumerate(zip(P.supports, P.vertices))
        ],
        "tolerances": tol.as_dict(),
    }


def verify_report(
    f: Frame,
    weights,
    tol: Tolerances = DEFAULT_TOL,
    decompose: bool = False,
    max_n: int = DEFAULT_MAX_N,
    force: bool = False,
) -> dict:
    residual, ok = verify_scaling(f, weights, tol)
    report = {"n": f.n, "weights": list(weights), "residual": residual, "ok": ok}
    if decompose and ok:
        P = enumerate_minimal_scalings(f, tol, max_n, force)
        report["decomposition"] = [
            {"vertex": k, "support": list(P.supports[k]), "coefficient": t}
            for k, t in decompose_scaling(f, weights, P, tol)
        ]
    return report
