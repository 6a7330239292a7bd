"""FastAPI wrapper around the core package.

Errors carry an ``exit_code`` in the detail payload mirroring the CLI
contract: 2 = bad input, 3 = no interior/exterior bracket.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import ads2, btz_sl2, causal, orbits, so2n, verify
from .models import (
    Ads2Request,
    Ads2Response,
    AlgebraResponse,
    BtzRequest,
    BtzResponse,
    BtzRow,
    CheckResultModel,
    ClassifyRequest,
    ClassifyResponse,
    HorizonRequest,
    HorizonResponse,
    HorizonRow,
    VerifyRequest,
    VerifyResponse,
)

OFF_MANIFOLD_REJECT = 1e-2


def _bad_input(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"exit_code": 2, "message": message})


def _no_bracket(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"exit_code": 3, "message": message})


def _prepare_point(dim: int, coords: list[float]) -> tuple[np.ndarray, float]:
    """Validate and radially renormalize a point; returns (point, adjustment)."""
    if len(coords) != dim + 1:
        raise _bad_input(f"point needs {dim + 1} coordinates for dim={dim}, got {len(coords)}")
    p = np.asarray(coords, dtype=float)
    residual = orbits.hyperboloid_residual(p)
    if residual > OFF_MANIFOLD_REJECT:
        raise _bad_input(f"point is off the hyperboloid by {residual:.3e} (limit 1e-2)")
    try:
        q = orbits.project_to_hyperboloid(p)
    except ValueError as exc:
        raise _bad_input(str(exc))
    return q, float(np.max(np.abs(q - p)))


def create_app() -> FastAPI:
    app = FastAPI(title="adsbh", version="0.1.0",
                  description="Causal structure of AdS black holes from closed "
                              "Iwasawa orbits")

    @app.get("/")
    def root() -> dict:
        return {"schema": 1, "name": "adsbh",
                "endpoints": ["/algebra/{dim}", "/classify", "/horizon",
                              "/verify", "/ads2", "/btz"]}

    @app.get("/algebra/{dim}", response_model=AlgebraResponse, response_model_by_alias=True)
    def algebra(dim: int) -> AlgebraResponse:
        if dim < 2:
            raise _bad_input("dim must be >= 2")
        gs = so2n.generators(dim)
        gens = {name: getattr(gs, name).tolist()
                for name in ("q0", "J1", "J2", "M", "L", "N", "F", "E")}
        fams = {name: [Z.tolist() for Z in getattr(gs, name)]
                for name in ("q", "W", "Y", "V", "X")}
        labels = {}
        if dim >= 3:
            for name in ("M", "L", "N", "F"):
                labels[name] = list(so2n.root_label(getattr(gs, name)))
            for name in ("W", "Y", "V", "X"):
                fam = getattr(gs, name)
                if fam:
                    labels[name] = list(so2n.root_label(fam[0]))
        return AlgebraResponse(dim=dim, generators=gens, families=fams,
                               root_labels=labels)

    @app.post("/classify", response_model=ClassifyResponse, response_model_by_alias=True)
    def classify(req: ClassifyRequest) -> ClassifyResponse:
        if req.dim < 3:
            raise _bad_input("classification needs dim >= 3 (use /ads2 for the 2D model)")
        p, adjustment = _prepare_point(req.dim, req.point)
        result = causal.classify(p, n_samples=req.samples, seed=req.seed,
                                 sing_tol=req.tol_sing)
        branch = orbits.classify_singularity(p, tol=req.tol_sing)
        return ClassifyResponse(
            point=[float(v) for v in p],
            adjustment=adjustment,
            cls=result.cls.value,
            witness=None if result.witness is None else [float(v) for v in result.witness],
            j1_norm_sq=orbits.j1_norm_sq(p),
            singularity_branch=branch.value,
            orbit_open_an=orbits.orbit_is_open(p, "an", cutoff=req.tol_rank),
            orbit_open_anbar=orbits.orbit_is_open(p, "anbar", cutoff=req.tol_rank),
        )

    @app.post("/horizon", response_model=HorizonResponse, response_model_by_alias=True)
    def horizon(req: HorizonRequest) -> HorizonResponse:
        rows = []
        try:
            if req.mode == "seeds":
                if req.point_in is None or req.point_out is None:
                    raise _bad_input("mode 'seeds' needs point_in and point_out")
                p_in, _ = _prepare_point(req.dim, req.point_in)
                p_out, _ = _prepare_point(req.dim, req.point_out)
                rows.append(_bisect_row(req.dim, p_in, p_out, req))
            elif req.mode == "k-circle":
                mus = np.linspace(0.35, 1.25, req.count)
                for mu in mus:
                    p_in = causal.k_point(req.dim, float(mu))
                    p_out = causal.k_point(req.dim, float(np.pi - mu))
                    rows.append(_bisect_row(req.dim, p_in, p_out, req))
            else:  # planar sweep over the twisted (rho, tau) chart, 3D only
                if req.dim != 3:
                    raise _bad_input("mode 'planar' is the 3D chart sweep; use dim=3")
                rhos = np.linspace(-1.5, 1.5, req.count)
                for rho in rhos:
                    tau = btz_sl2.horizon_closed_form(float(rho),
                                                      -1 if rho >= 0 else +1)
                    delta = min(0.25, 0.8 * (np.pi - tau), 0.8 * tau)

                    def path(lam, rho=float(rho), tau=tau, delta=delta):
                        return btz_sl2.unembed(btz_sl2.global_coords_to_group(
                            rho, 0.0, tau + delta - 2.0 * delta * lam))

                    h = causal.horizon_bisect(path(0.0), path(1.0), steps=req.steps,
                                              n_samples=req.samples, seed=req.seed,
                                              path=path)
                    rows.append(_make_row(req.dim, h))
        except causal.BracketError as exc:
            raise _no_bracket(str(exc))
        except ValueError as exc:
            raise _bad_input(str(exc))
        return HorizonResponse(dim=req.dim, rows=rows)

    def _bisect_row(dim: int, p_in: np.ndarray, p_out: np.ndarray,
                    req: HorizonRequest) -> HorizonRow:
        h = causal.horizon_bisect(p_in, p_out, steps=req.steps,
                                  n_samples=req.samples, seed=req.seed)
        return _make_row(dim, h)

    def _make_row(dim: int, h: np.ndarray) -> HorizonRow:
        orbits.check_point(h, tol=1e-8)   # every emitted point re-validates
        res_u2x2 = float(abs(h[0] ** 2 - h[2] ** 2)) if dim == 3 else None
        return HorizonRow(point=[float(v) for v in h],
                          residual_u2_x2=res_u2x2,
                          residual_theta=causal.horizon_theta_residual(h))

    @app.post("/verify", response_model=VerifyResponse, response_model_by_alias=True)
    def run_verify(req: VerifyRequest) -> VerifyResponse:
        report = verify.run(req.suite)
        suites = {}
        passed = failed = 0
        first = None
        for name in sorted(report["suites"]):
            results = report["suites"][name]
            suites[name] = [CheckResultModel(name=r.name, passed=r.passed, detail=r.detail)
                            for r in results]
            for r in results:
                if r.passed:
                    passed += 1
                else:
                    failed += 1
                    if first is None:
                        first = f"{name}.{r.name}: {r.detail}"
        return VerifyResponse(ok=report["ok"], passed=passed, failed=failed,
                              suites=suites, first_counterexample=first)

    @app.post("/ads2", response_model=Ads2Response, response_model_by_alias=True)
    def run_ads2(req: Ads2Request) -> Ads2Response:
        rep = ads2.ads2_no_horizon(req.samples, req.seed)
        return Ads2Response(samples=rep.samples, escapes=rep.escapes, status=rep.status)

    @app.post("/btz", response_model=BtzResponse, response_model_by_alias=True)
    def run_btz(req: BtzRequest) -> BtzResponse:
        branches = {"+": (+1,), "-": (-1,), "both": (+1, -1)}[req.branch]
        rows = []
        for rho in np.linspace(-req.rho_max, req.rho_max, req.count):
            for br in branches:
                tau = btz_sl2.horizon_closed_form(float(rho), br)
                p = btz_sl2.unembed(btz_sl2.global_coords_to_group(float(rho), req.theta, tau))
                rows.append(BtzRow(rho=float(rho), branch=br, tau=tau,
                                   point=[float(v) for v in p],
                                   residual_u2_x2=float(abs(p[0] ** 2 - p[2] ** 2))))
        return BtzResponse(rows=rows)

    return app
