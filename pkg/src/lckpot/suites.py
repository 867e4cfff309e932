"""Verification suites driven by a :class:`~lckpot.config.RunConfig`.

Each suite returns a :class:`SuiteResult` whose ``checks`` map invariant
names to pass flags; the suite passes iff every check does. Metrics are
plain JSON values so run-records serialize deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import families, jets
from .config import RunConfig
from .forms import HermitianForm
from .gluing import GlueSpec, check_glue_hypotheses, glue, verify_glue
from .grammar import ExpressionError, parse_field, parse_holo
from .holo import HoloPoly
from .hopf import (
    HopfModel,
    PipelineError,
    PositivizeParams,
    degree2_sections,
    find_sign_change,
    neglog_transform,
    positivize,
    section_potential,
    standard_potential,
    vuletescu_potential,
)
from .jets import ScalarField
from .positivity import check_psh, levi_check, min_eigenvalue, verify_regular_value
from .regmax import compose_regmax, regmax_jet, regmax_value
from .reports import number
from .sampling import ball
from .twisted import LeeData, twisted_hessian_batch

__all__ = ["SuiteResult", "Context", "SUITE_RUNNERS", "run_suite", "builtin_fields"]


@dataclass
class SuiteResult:
    name: str
    checks: dict
    metrics: dict
    rows: list = field(default_factory=list, repr=False)
    slices: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failing(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        return {"pass": self.passed, "failing": self.failing, "checks": dict(self.checks), "metrics": self.metrics}


@dataclass
class Context:
    """Parsed configuration shared by all suites."""

    cfg: RunConfig
    model: HopfModel
    fields: dict

    @classmethod
    def from_config(cls, cfg: RunConfig) -> "Context":
        n = cfg.model.n
        parsed = {}
        for name, text in cfg.fields.items():
            try:
                parsed[name] = parse_field(text, n)
            except ExpressionError as exc:
                exc.args = (f"fields.{name}: {exc}",)
                raise
        return cls(cfg, HopfModel(n, cfg.model.lam), parsed)

    def field(self, name: str) -> ScalarField:
        if name not in self.fields:
            raise KeyError(f"no field named {name!r} in the config (have: {', '.join(sorted(self.fields))})")
        return self.fields[name]

    def annulus(self, count: int | None = None, seed: int | None = None) -> np.ndarray:
        s = self.cfg.sampler
        return self.model.annulus(count or s.count, s.seed if seed is None else seed).sample()


# ---------------------------------------------------------------------------
# helpers


def _verdicts(ev: np.ndarray, tol: float, margin: float) -> np.ndarray:
    return np.where(ev >= margin, "strict", np.where(ev >= -tol, "psd", "fail"))


def point_rows(Z, values, ev, verdicts, limit: int, **extra) -> list[dict]:
    """CSV rows: real/imaginary parts of each coordinate, then the data columns."""
    rows = []
    for k in range(min(limit, len(Z))):
        row = {}
        for j, c in enumerate(Z[k]):
            row[f"z{j + 1}_re"] = float(c.real)
            row[f"z{j + 1}_im"] = float(c.imag)
        row["value"] = float(values[k])
        row["min_eigenvalue"] = float(ev[k])
        row["verdict"] = str(verdicts[k])
        for key, col in extra.items():
            v = col[k]
            row[key] = v.item() if isinstance(v, np.generic) else v
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# suites


def suite_vuletescu(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    vc, tol = cfg.vuletescu, cfg.tolerances
    Q = parse_holo(vc.Q, model.n)
    phi = vuletescu_potential(model, Q, vc.A)
    phi0 = standard_potential(model)
    Z = ctx.annulus()
    signs = find_sign_change(phi, Z)
    Zd = Z[: vc.points]
    if signs.negative_point is not None:
        Zd = np.vstack([signs.negative_point[None, :], Zd])
    H = twisted_hessian_batch(phi, model.lee, Zd)
    H0 = twisted_hessian_batch(phi0, model.lee, Zd)
    dev = np.max(np.abs(H - H0), axis=(1, 2))
    ev = min_eigenvalue(HermitianForm(H))
    neg = signs.negative_value
    checks = {
        "negative-witness": neg is not None and neg <= vc.threshold,
        "form-deviation": float(dev.max()) <= tol.form_deviation,
    }
    metrics = {
        "A": vc.A,
        "Q": vc.Q,
        "witnesses": signs.to_dict(),
        "min_value": number(np.min(phi(Z))),
        "max_form_deviation": number(dev.max()),
        "deviation_points": len(Zd),
        "min_eigenvalue": number(ev.min()),
    }
    rows = point_rows(
        Zd, phi(Zd), ev, _verdicts(ev, tol.psd, tol.strict_margin), cfg.output.csv_rows, form_deviation=dev
    )
    return SuiteResult("vuletescu", checks, metrics, rows, [("potential", phi, model.lee)])


def suite_regmax(ctx: Context) -> SuiteResult:
    cfg = ctx.cfg
    tol = cfg.tolerances.regmax
    rng = np.random.default_rng([cfg.sampler.seed, 2])
    eps_values = np.logspace(-3, 1, 9)
    N = cfg.regmax.pairs
    per = -(-N // len(eps_values))
    band_dev = add = scale = sym = 0.0
    convex = mono = np.inf
    checked = 0
    rows = []
    for eps in eps_values:
        x = rng.uniform(-10, 10, per)
        gap = eps * (1.0 + rng.exponential(1.0, per))
        y = x - rng.choice([-1.0, 1.0], per) * gap
        far = np.abs(x - y) >= eps
        v = regmax_value(x[far], y[far], eps)
        band_dev = max(band_dev, float(np.max(np.abs(v - np.maximum(x[far], y[far])))))
        checked += int(far.sum())
        # pairs inside and around the smoothing band
        u = x + eps * rng.uniform(-1, 1, per)
        J = regmax_jet(x, u, eps)
        H = J.hessian
        tr, det_part = H[:, 0, 0] + H[:, 1, 1], np.hypot(H[:, 0, 0] - H[:, 1, 1], 2 * H[:, 0, 1])
        convex = min(convex, float(np.min(0.5 * (tr - det_part))))
        mono = min(mono, float(np.min(np.minimum(J.d1, J.d2))))
        c = rng.uniform(-10, 10, per)
        add = max(add, float(np.max(np.abs(regmax_value(x + c, u + c, eps) - J.value - c))))
        for t in rng.uniform(0.1, 10, 8):
            scale = max(scale, float(np.max(np.abs(regmax_value(t * x, t * u, t * eps) - t * J.value))))
        sym = max(sym, float(np.max(np.abs(regmax_value(u, x, eps) - J.value))))
        for k in range(min(cfg.output.csv_rows // len(eps_values), per)):
            rows.append(
                {
                    "x": float(x[k]),
                    "y": float(u[k]),
                    "eps": float(eps),
                    "value": float(J.value[k]),
                    "max": float(max(x[k], u[k])),
                    "d1": float(J.d1[k]),
                    "c": float(H[k, 0, 0]),
                }
            )
    checks = {
        "band-identity": band_dev == 0.0,
        "convexity": convex >= -tol,
        "monotonicity": mono >= -tol,
        "additivity": add <= tol,
        "scaling": scale <= tol,
        "symmetry": sym <= tol,
    }
    metrics = {
        "band_pairs": checked,
        "band_max_deviation": number(band_dev),
        "convexity_margin": number(convex),
        "monotonicity_margin": number(mono),
        "additivity_deviation": number(add),
        "scaling_deviation": number(scale),
        "symmetry_deviation": number(sym),
    }
    return SuiteResult("regmax", checks, metrics, rows)


def _random_pair(k: int, seed: int, n: int, model: HopfModel, count: int):
    rng = np.random.default_rng([seed, 3, k])
    twisted = k % 2 == 1
    strict = float(rng.uniform(0.004, 0.2)) if k % 4 < 2 else 0.0
    if twisted:
        Z = model.annulus(count, seed + k).sample()
        phi = families.random_twisted_psh(rng, n, strict)
        psi = families.random_twisted_psh(rng, n, strict)
        lee = model.lee
    else:
        Z = ball(n, 1.0, count, seed + k).sample()
        phi = families.random_psh_ball(rng, n, 1.0, strict)
        psi = families.random_psh_ball(rng, n, 1.0, strict)
        lee = None
    psi = families.matched_pair(phi, psi, Z, twisted)
    d = phi(Z) - psi(Z)
    eps = float(rng.uniform(0.1, 0.5) * (np.percentile(d, 75) - np.percentile(d, 25)) + 1e-3)
    return phi, psi, eps, lee, Z, twisted


def suite_psh(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    tol = cfg.tolerances
    pc = cfg.psh
    f = ctx.field(pc.field)
    lee = model.lee if pc.twisted else None
    Z = ctx.annulus() if pc.twisted else ball(model.n, 1.0, cfg.sampler.count, cfg.sampler.seed).sample()
    rep = check_psh(f, lee, Z, tol.psd, tol.strict_margin)
    checks = {"field-psd": rep.psd}
    pairs = []
    worst = []
    min_glued, strict_ok = np.inf, True
    for k in range(pc.pairs):
        phi, psi, eps, plee, Zk, twisted = _random_pair(k, cfg.sampler.seed, model.n, model, cfg.sampler.count)
        g = compose_regmax(phi, psi, eps)
        rg = check_psh(g, plee, Zk, tol.psd, 1e-4)
        rp = check_psh(phi, plee, Zk, tol.psd, 1e-3)
        rq = check_psh(psi, plee, Zk, tol.psd, 1e-3)
        d = phi(Zk) - psi(Zk)
        both_strict = rp.strict and rq.strict
        ok_strict = rg.strict if both_strict else True
        strict_ok &= ok_strict
        min_glued = min(min_glued, rg.min_eigenvalue_overall)
        pairs.append(
            {
                "index": k,
                "twisted": twisted,
                "eps": eps,
                "phi_wins": int(np.sum(d > 0)),
                "psi_wins": int(np.sum(d < 0)),
                "inputs_min_eigenvalue": [number(rp.min_eigenvalue_overall), number(rq.min_eigenvalue_overall)],
                "inputs_strict": both_strict,
                "glued_min_eigenvalue": number(rg.min_eigenvalue_overall),
                "glued_verdict": rg.verdict,
                "pass": rg.psd and ok_strict,
            }
        )
        worst.append((rg.worst_point, g(rg.worst_point[None, :])[0], rg.min_eigenvalue_overall, rg.verdict, k))
    checks["pairs-psd"] = all(p["glued_verdict"] != "fail" for p in pairs)
    checks["pairs-strict"] = bool(strict_ok)
    metrics = {
        "field": pc.field,
        "twisted": pc.twisted,
        "report": rep.to_dict(),
        "pairs": pairs,
        "min_glued_eigenvalue": number(min_glued),
    }
    ev = rep.min_eigenvalues
    rows = point_rows(Z, f(Z), ev, _verdicts(ev, tol.psd, tol.strict_margin), cfg.output.csv_rows, source=[pc.field] * len(Z))
    for p, v, e, verdict, k in worst:
        rows += point_rows(p[None, :], [v], [e], [verdict], 1, source=[f"pair{k}"])
    return SuiteResult("psh", checks, metrics, rows, [(pc.field, f, lee)])


def suite_glue(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    tol, gc = cfg.tolerances, cfg.glue
    phi = ctx.field(gc.phi)
    psi = ctx.field(gc.psi) if gc.psi else cfg.pipeline.eps_scale * section_potential(model)
    eps = gc.eps if gc.eps is not None else cfg.pipeline.eps_band
    Z = ctx.annulus()
    spec = GlueSpec(phi, psi, model.lee, eps, Z, tol.margin_floor, tol.grad_floor)
    hyp = check_glue_hypotheses(spec)
    g = glue(spec, override=True)
    rep = verify_glue(g, spec, tol.psd, tol.strict_margin)
    rep.fidelity_tol = tol.fidelity

    weak_psi = parse_field(gc.weak_psi, model.n)
    wspec = GlueSpec(phi, weak_psi, model.lee, eps, Z, tol.margin_floor, tol.grad_floor)
    wg = glue(wspec, override=True)
    wrep = verify_glue(wg, wspec, tol.psd, tol.strict_margin)
    wrep.fidelity_tol = tol.fidelity
    downgrade = (
        wrep.psi_report.psd
        and not wrep.psi_report.strict
        and wrep.verdict == "psd"
        and wrep.strict_failures_total > 0
        and wrep.strict_failures_in_psi_region == wrep.strict_failures_total
    )
    checks = {
        "glue-hypotheses": hyp.passed,
        "region-fidelity": max(rep.fidelity_plus, rep.fidelity_minus) <= tol.fidelity,
        "glued-psd": rep.glued.psd,
        "glued-strict": rep.glued.strict if rep.expected_strict else True,
        "weak-downgrade": bool(downgrade),
    }
    metrics = {"eps": eps, "hypotheses": hyp.to_dict(), "glue": rep.to_dict(), "weak": wrep.to_dict()}
    d = phi(Z) - psi(Z)
    region = np.where(d >= eps, "plus", np.where(-d >= eps, "minus", "band"))
    ev = rep.glued.min_eigenvalues
    rows = point_rows(Z, g(Z), ev, _verdicts(ev, tol.psd, tol.strict_margin), cfg.output.csv_rows, region=region)
    return SuiteResult("glue", checks, metrics, rows, [("glued", g, model.lee), ("weak glued", wg, model.lee)])


def suite_neglog(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    tol, nc = cfg.tolerances, cfg.neglog
    n = model.n
    Zb = ball(n, 3.0, cfg.sampler.count, cfg.sampler.seed).sample()
    u = jets.norm_sq() - 10.0
    psi_ball = neglog_transform(u, Zb)
    rb = check_psh(psi_ball, None, Zb, tol.psd, tol.strict_margin)
    rng = np.random.default_rng([cfg.sampler.seed, 5])
    Zr = ball(n, 1.0, cfg.sampler.count, cfg.sampler.seed + 1).sample()
    v = families.random_psh_ball(rng, n, 1.0)
    v = v - float(np.max(v(Zr)) + 1.0)
    rr = check_psh(neglog_transform(v, Zr), None, Zr, tol.psd, tol.strict_margin)

    Z = ctx.annulus()
    shifts, hess_devs = {}, {}
    log_chi = np.log(model.chi)
    lam = model.lam
    for name, neg in (("standard", -jets.norm_sq()), ("section", -jets.sqrt(_sum_sq_monomials(n)))):
        psi = neglog_transform(neg, Z)
        shifts[name] = number(np.max(np.abs(psi(lam * Z) - psi(Z) + log_chi)))
        H, Hl = psi.jet(Z).hess_mixed, psi.jet(lam * Z).hess_mixed
        hess_devs[name] = number(np.max(np.abs(H - lam**2 * Hl)) / (1 + np.max(np.abs(H))))

    Q = parse_holo(cfg.vuletescu.Q, n)
    sweep = []
    witness_rows = []
    for A in np.linspace(nc.A_min, nc.A_max, nc.A_steps):
        s = find_sign_change(vuletescu_potential(model, Q, float(A)), Z)
        sweep.append({"A": float(A), "max_value": number(s.positive_value) if s.positive_value else None})
        if s.positive_point is not None:
            witness_rows.append((s.positive_point, s.positive_value, float(A)))
    checks = {
        "composition-ball": rb.psd,
        "composition-random": rr.psd,
        "automorphy-shift": max(shifts.values()) <= tol.automorphy,
        "hessian-invariance": max(hess_devs.values()) <= tol.automorphy,
        "positive-witness": len(witness_rows) == len(sweep),
    }
    metrics = {
        "ball": rb.to_dict(),
        "random": rr.to_dict(),
        "automorphy_shift": shifts,
        "hessian_invariance": hess_devs,
        "sweep": sweep,
        "scope": "checks the composition and automorphy ingredients and the sweep; "
        "the global non-existence argument for negative potentials is not machine-checked",
    }
    ev = rb.min_eigenvalues
    rows = point_rows(Zb, psi_ball(Zb), ev, _verdicts(ev, tol.psd, tol.strict_margin), cfg.output.csv_rows, A=[None] * len(Zb))
    for p, val, A in witness_rows:
        rows += point_rows(p[None, :], [val], [np.nan], ["positive"], 1, A=[A])
    return SuiteResult("neglog", checks, metrics, rows)


def _sum_sq_monomials(n: int) -> ScalarField:
    out = None
    for s in degree2_sections(n):
        t = jets.abs_sq(s.poly())
        out = t if out is None else out + t
    return out


def suite_levi(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    tol = cfg.tolerances
    n = model.n
    checks: dict = {}
    metrics: dict = {}
    rows = []
    if n < 2:
        return SuiteResult("levi", {"dimension": False}, {"message": "Levi forms need n >= 2"})
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1
    weights = np.ones(n)
    weights[1:] = 2.0
    ellipsoid = None
    for j in range(n):
        t = float(weights[j]) * jets.abs_sq(HoloPoly(n, {tuple(int(k == j) for k in range(n)): 1.0}))
        ellipsoid = t if ellipsoid is None else ellipsoid + t
    cases = [
        ("sphere", jets.norm_sq(), e1, 1.0, True),
        ("flat", jets.re(HoloPoly(n, {tuple(int(k == 0) for k in range(n)): 1.0})), np.zeros(n, complex), 0.0, False),
        ("ellipsoid", ellipsoid, e1, 2.0, True),
    ]
    for name, f, p, expected, strict in cases:
        r = levi_check(f, p, tol.psd)
        ev = np.linalg.eigvalsh(r.levi_matrix)
        ok = bool(np.all(np.abs(ev - expected) <= 1e-12) and r.strictly_pseudoconvex == strict)
        checks[f"levi-{name}"] = ok
        metrics[name] = r.to_dict()
        rows += point_rows(p[None, :], f(p[None, :]), [r.min_eigenvalue], ["strict" if r.strictly_pseudoconvex else "flat"], 1, case=[name])

    S = ball(n, 2.0, cfg.sampler.count, cfg.sampler.seed)
    Zs = S.sample()
    sphere_pts = Zs[np.linalg.norm(Zs, axis=1) > 1e-3]
    sphere_pts = sphere_pts[:1000] / np.linalg.norm(sphere_pts[:1000], axis=1)[:, None]
    S = S.with_extra(sphere_pts)
    good = verify_regular_value(jets.norm_sq(), 1.0, S, tol.grad_floor)
    bad = verify_regular_value(jets.power(jets.norm_sq() - 1.0, 2.0), 0.0, S, tol.grad_floor)
    checks["regular-accept"] = good.passed and good.level_set_nonempty
    checks["regular-reject"] = not bad.passed
    metrics["regular_accept"] = good.to_dict()
    metrics["regular_reject"] = bad.to_dict()
    return SuiteResult("levi", checks, metrics, rows)


def suite_positivize(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    tol, pl = cfg.tolerances, cfg.pipeline
    phi = ctx.field(cfg.positivize.field)
    params = PositivizeParams(
        c=pl.c,
        eps_scale=pl.eps_scale,
        eps_band=pl.eps_band,
        delta=pl.delta,
        grad_floor=tol.grad_floor,
        strict_floor=tol.strict_margin,
        tol=tol.psd,
    )
    S = model.annulus(cfg.positivize.count, cfg.sampler.seed)
    try:
        res = positivize(phi, model, params, S)
    except PipelineError as exc:
        metrics = {
            "params": params.to_dict(),
            "failed_stage": exc.stage,
            "message": str(exc),
            "result": {"delta": None, "short_circuit": False, "stages": exc.record},
        }
        return SuiteResult("positivize", {f"pipeline:{exc.stage}": False}, metrics)
    Z = S.sample()
    out = res.field
    vals = out(Z)
    rep = check_psh(out, model.lee, Z, tol.psd, tol.strict_margin)
    if res.short_circuit:
        agree, outside = 0.0, len(Z)
    else:
        d = phi(Z) - res.section(Z)
        mask = d >= params.eps_band
        outside = int(mask.sum())
        agree = float(np.max(np.abs(vals[mask] - phi(Z[mask])))) if outside else 0.0
    checks = {
        "positivity": float(vals.min()) >= params.positivity_floor,
        "strict": rep.strict,
        "agreement": agree <= tol.fidelity,
    }
    metrics = {
        "params": params.to_dict(),
        "result": res.to_dict(),
        "min_value": number(vals.min()),
        "min_eigenvalue": number(rep.min_eigenvalue_overall),
        "agreement_outside_glue": number(agree),
        "points_outside_glue": outside,
        "points_checked": len(Z),
    }
    ev = rep.min_eigenvalues
    rows = point_rows(Z, vals, ev, _verdicts(ev, tol.psd, tol.strict_margin), cfg.output.csv_rows, input_value=phi(Z[: cfg.output.csv_rows]))
    return SuiteResult("positivize", checks, metrics, rows, [("positivized", out, model.lee), ("input", phi, model.lee)])


def builtin_fields(model: HopfModel) -> list[tuple[str, ScalarField]]:
    """Representative fields exercising every node type of the jet engine."""
    n = model.n
    zn = f"z{n}"
    exprs = [
        "|z|^2",
        "log(|z|^2)",
        f"Re(z1*{zn})",
        f"Im(z1^3 - 2*i*{zn})",
        f"|z1^2 + {zn}|^2",
        "exp(Re(z1))",
        "-log(10 - |z|^2)",
        f"(|z1|^2 + 1)^1.5",
        f"|z1|^2 * |{zn}|^2",
        f"1 / (1 + |{zn}|^2)",
        f"1 + 3*Re(z1*{zn})/|z|^2",
    ]
    out = [(e, parse_field(e, n)) for e in exprs]
    sec = section_potential(model)
    out.append(("section potential", sec))
    out.append(("regmax(vuletescu, section)", compose_regmax(out[-2][1], 0.1 * sec, 0.02)))
    out.append(("sqrt(|z|^2)", jets.sqrt(jets.norm_sq())))
    return out


def _jet_error(A, B) -> np.ndarray:
    parts = [
        np.abs(A.value - B.value),
        np.max(np.abs(A.grad_z - B.grad_z), axis=1),
        np.max(np.abs(A.hess_mixed - B.hess_mixed), axis=(1, 2)),
        np.max(np.abs(A.hess_holo - B.hess_holo), axis=(1, 2)),
    ]
    return np.max(np.stack(parts), axis=0)


def oracle_agreement(f: ScalarField, Z: np.ndarray, steps, factor: float = 10.0) -> dict:
    """Fit ``|AD - FD| <= C h^2`` at the coarsest step and test finer steps.

    Per point, ``C`` is the error at the first step divided by ``h^2``; at
    every further step the error must stay within ``factor`` times
    ``C h^2`` plus a roundoff allowance of the extended-precision stencil.
    """
    A = jets.eval_jet2(f, Z)
    h0 = float(steps[0])
    e0 = _jet_error(A, jets.finite_diff_jet2(f, Z, h0))
    C = e0 / h0**2
    scale = 1.0 + np.abs(A.value) + np.max(np.abs(A.grad_z), axis=1)
    ratio = 0.0
    for h in steps[1:]:
        e = _jet_error(A, jets.finite_diff_jet2(f, Z, float(h)))
        ld_eps = float(np.finfo(np.longdouble).eps)
        bound = C * h**2 + 64 * ld_eps * scale / h**2 + 1e-15 * scale
        ratio = max(ratio, float(np.max(e / bound)))
    return {"fitted_constant": float(C.max()), "max_error": float(e0.max()), "ratio": ratio, "pass": ratio <= factor}


def suite_oracle(ctx: Context) -> SuiteResult:
    cfg, model = ctx.cfg, ctx.model
    oc = cfg.oracle
    Z = model.annulus(oc.points, cfg.sampler.seed + 7).sample()
    fields = builtin_fields(model) + [(f"config:{k}", v) for k, v in ctx.fields.items()]
    checks, metrics = {}, {}
    for name, f in fields:
        res = oracle_agreement(f, Z, oc.steps, cfg.tolerances.oracle_factor)
        checks[f"oracle:{name}"] = res["pass"]
        metrics[name] = res
    return SuiteResult("oracle", checks, metrics)


SUITE_RUNNERS: dict[str, Callable[[Context], SuiteResult]] = {
    "vuletescu": suite_vuletescu,
    "regmax": suite_regmax,
    "psh": suite_psh,
    "glue": suite_glue,
    "neglog": suite_neglog,
    "levi": suite_levi,
    "positivize": suite_positivize,
    "oracle": suite_oracle,
}


def run_suite(name: str, ctx: Context) -> SuiteResult:
    return SUITE_RUNNERS[name](ctx)
