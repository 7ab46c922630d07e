"""FastAPI wrapper around the core library: bound tables, exact distribution
queries, seeded Monte Carlo runs, and the verification suite."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Optional

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..clgroups import (
    Family,
    GroupSpec,
    enumerate_group,
    fixed_space_codim,
    group_order,
    make_spec,
)
from ..ffield import SquareClass
from ..fixdist import fixed_space_distribution
from ..mcengine import mc_fixed_dim, mc_transv_product, verify
from ..mixbounds import profile
from ..transprod import (
    PairMode,
    codim_dist_gl,
    codim_dist_gu,
    codim_dist_sp,
    sp_odd_class_dist,
)
from ..weilchar import WeilVariant, default_variant
from .models import (
    BoundsRequest,
    BoundsResponse,
    BoundsRow,
    CheckRow,
    DistRequest,
    DistResponse,
    DistRow,
    HealthResponse,
    SimulateRequest,
    SimulateResponse,
    SimulateRow,
    SpecEcho,
    VerifyRequest,
    VerifyResponse,
)

_FAMILIES = {
    "gl": Family.GL,
    "gu": Family.GU,
    "sp-odd": Family.SP_ODD,
    "sp-even": Family.SP_EVEN,
}

_GL_ENUM_CAP = 200_000


def _resolve_spec(family: str, n: int, q: int, variant: Optional[str]) -> tuple[GroupSpec, WeilVariant]:
    try:
        spec = make_spec(_FAMILIES[family], n, q)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    if variant is None:
        wv = default_variant(spec.family)
    else:
        if spec.family is not Family.SP_EVEN:
            raise HTTPException(
                status_code=422,
                detail="variant selection applies to sp-even only",
            )
        wv = (
            WeilVariant.SP_EVEN_LINEAR
            if variant == "linear"
            else WeilVariant.SP_EVEN_UNITARY
        )
    return spec, wv


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def create_app() -> FastAPI:
    app = FastAPI(
        title="weilmix",
        version=__version__,
        description="Exact mixing bounds for Weil-character tensor chains on finite classical groups",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse()

    @app.post("/bounds", response_model=BoundsResponse)
    def bounds(req: BoundsRequest) -> BoundsResponse:
        spec, wv = _resolve_spec(req.family, req.n, req.q, req.variant)
        try:
            prof = profile(
                spec, wv, range(req.r_min, req.r_max + 1), include_exact_sum=req.exact_sum
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        rows = [
            BoundsRow(
                r=row.r,
                upper_closed=row.upper_closed,
                upper_from_sum=row.upper_from_sum,
                upper_tv=row.upper_tv,
                lower_closed=row.lower_closed,
                lower_chebyshev=row.lower_chebyshev,
                lower_tv=row.lower_tv,
                exact_char_sum=(
                    _frac_str(row.exact_char_sum) if row.exact_char_sum is not None else None
                ),
                provenance="exact+closed-form" if row.exact_char_sum is not None else "closed-form",
            )
            for row in prof.rows
        ]
        return BoundsResponse(
            spec=SpecEcho(family=req.family, n=req.n, q=req.q, variant=req.variant),
            rows=rows,
        )

    @app.post("/dist", response_model=DistResponse)
    def dist(req: DistRequest) -> DistResponse:
        spec, _ = _resolve_spec(req.family, req.n, req.q, None)
        rows: list[DistRow] = []
        try:
            if req.what == "fixed-space":
                rows = _fixed_space_rows(spec)
            elif req.what == "pair-codim":
                fn = {
                    Family.GL: codim_dist_gl,
                    Family.GU: codim_dist_gu,
                    Family.SP_ODD: codim_dist_sp,
                    Family.SP_EVEN: codim_dist_sp,
                }[spec.family]
                d = fn(spec.n, spec.q)
                rows = [
                    DistRow(
                        key=f"codim {e}",
                        numerator=d[e].numerator,
                        denominator=d[e].denominator,
                        value=float(d[e]),
                    )
                    for e in (0, 1, 2)
                ]
            else:  # sp-classes
                if spec.family is not Family.SP_ODD or spec.n < 2:
                    raise HTTPException(
                        status_code=422,
                        detail="sp-classes requires the sp-odd family with n >= 2",
                    )
                mode = PairMode.PAIRS_FROM_C if req.mode == "c-pairs" else PairMode.ALL_TRANSVECTIONS
                d = sp_odd_class_dist(spec.n, spec.q, mode)
                rows = [
                    DistRow(
                        key=str(label),
                        numerator=p.numerator,
                        denominator=p.denominator,
                        value=float(p),
                    )
                    for label, p in sorted(d.probs.items(), key=lambda kv: str(kv[0]))
                ]
        except HTTPException:
            raise
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return DistResponse(
            spec=SpecEcho(family=req.family, n=req.n, q=req.q),
            what=req.what,
            mode=req.mode if req.what == "sp-classes" else None,
            rows=rows,
        )

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        spec, _ = _resolve_spec(req.family, req.n, req.q, None)
        tag: Optional[SquareClass] = None
        if req.what == "transv-product" and spec.family is Family.SP_ODD:
            choice = req.transv_class or "c"
            tag = {
                "c": SquareClass.SQUARE,
                "c-star": SquareClass.NONSQUARE,
                "all": None,
            }[choice]
        elif req.transv_class is not None:
            raise HTTPException(
                status_code=422,
                detail="transv_class applies to sp-odd transvection products only",
            )
        try:
            if req.what == "fixed-space":
                hist = mc_fixed_dim(spec, req.samples, req.seed, threads=req.threads)
            else:
                hist = mc_transv_product(
                    spec, req.steps, req.samples, req.seed, class_tag=tag, threads=req.threads
                )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        rows = []
        for key in sorted(hist.keys, key=lambda k: (len(k), k)):
            freq = hist.frequency(key)
            stderr = (freq * (1 - freq) / hist.total) ** 0.5 if hist.total else 0.0
            rows.append(
                SimulateRow(
                    key=key,
                    count=hist.counts.get(key, 0),
                    frequency=freq,
                    stderr=stderr,
                )
            )
        return SimulateResponse(
            spec=SpecEcho(family=req.family, n=req.n, q=req.q),
            what=req.what,
            steps=req.steps if req.what == "transv-product" else None,
            samples=req.samples,
            seed=req.seed,
            threads=req.threads,
            rows=rows,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def run_verify(req: VerifyRequest) -> VerifyResponse:
        report = verify(req.level)
        return VerifyResponse(
            level=report.level,
            n_checks=len(report.checks),
            n_fail=report.n_fail,
            ok=report.ok,
            checks=[
                CheckRow(name=c.name, status=c.status, details=c.details)
                for c in report.checks
            ],
        )

    return app


def _fixed_space_rows(spec: GroupSpec) -> list[DistRow]:
    if spec.family is Family.GL:
        # no closed form for GL: exact enumeration tallies at small order
        if group_order(spec) > _GL_ENUM_CAP:
            raise HTTPException(
                status_code=422,
                detail="fixed-space for GL is enumeration-backed and needs "
                f"group order <= {_GL_ENUM_CAP}",
            )
        tally: Counter = Counter()
        for g in enumerate_group(spec):
            tally[spec.dim - fixed_space_codim(spec, g)] += 1
        order = group_order(spec)
        return [
            DistRow(
                key=f"dim {k}",
                numerator=tally.get(k, 0),
                denominator=order,
                value=tally.get(k, 0) / order,
            )
            for k in range(spec.dim + 1)
        ]
    dist = fixed_space_distribution(spec)
    return [
        DistRow(
            key=f"dim {k}",
            numerator=p.numerator,
            denominator=p.denominator,
            value=float(p),
        )
        for k, p in enumerate(dist.probs)
    ]
