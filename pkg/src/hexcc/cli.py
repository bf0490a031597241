"""Batch command-line interface.

Subcommands: build, check, gap, theorem, autocorr, ising-scan,
oracle-compare.  Every run writes a config echo plus machine-readable
JSON/CSV into the output directory; a subcommand exits nonzero iff any
checked inequality or residual tolerance fails.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import code as code_mod
from . import config as config_mod
from . import davies, dense, dynamics, io, ising, lattice
from .pauli import PauliOperator, product

PASS, FAIL = "PASS", "FAIL"
SPEC_TOL = {
    "selfadjoint": 1e-10,
    "positivity": -1e-10,
    "identity_kernel": 1e-12,
    "oracle_spectra": 1e-8,
    "theorem_slack": -1e-10,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "command"):
        parser.print_help()
        return 2
    overrides = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "func", "config", "extra_random", "homogeneous")
    }
    try:
        cfg = config_mod.load_config(args.config, overrides)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    problems = cfg.validate()
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return 2
    try:
        return args.func(cfg, args)
    except (ValueError, davies.GramConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexcc", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--config", help="TOML config file; flags override it")
        p.add_argument("--size", type=int, help="plaquette count N (multiple of 3)")
        p.add_argument("--beta", dest="betas", type=_parse_floats, help="comma list of beta values")
        p.add_argument("--j", type=float, help="coupling J (energies scale with it)")
        p.add_argument("--density", choices=("flat", "ohmic"), help="bath spectral density")
        p.add_argument("--out", help="output directory (default $HEXCC_OUTPUT_ROOT/<cmd>)")
        p.add_argument("--jobs", type=int, help="parallel workers (0 = all cores)")
        p.add_argument("--kernel-tol", dest="kernel_tol", type=float)

    p = sub.add_parser("build", help="construct and validate a lattice + code")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run the full invariant suite")
    common(p)
    p.add_argument("--method", choices=("structured", "dense-oracle", "both"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gap", help="sector minima, global gap and instability bound")
    common(p)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("theorem", help="verify the instability bound per beta")
    common(p)
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("autocorr", help="autocorrelation series and decay fits")
    common(p)
    p.add_argument("--observables", type=_parse_list, help="comma list: Z1, Z1Z3, X2 or Pauli strings")
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-points", dest="t_points", type=int)
    p.set_defaults(func=cmd_autocorr)

    p = sub.add_parser("ising-scan", help="chain gap vs length")
    common(p)
    p.add_argument("--lengths", type=_parse_lengths, help="e.g. 4..10 or 4,6,8,10")
    p.add_argument("--boundary", choices=("open", "periodic"))
    p.add_argument("--homogeneous", action="store_true", help="all couplings J")
    p.set_defaults(func=cmd_ising_scan)

    p = sub.add_parser("oracle-compare", help="structured blocks vs dense oracle")
    common(p)
    p.add_argument("--extra-random", type=int, default=8, help="extra random cosets to compare")
    p.set_defaults(func=cmd_oracle_compare)

    return parser


def _parse_floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _parse_list(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _parse_lengths(text):
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(",") if x.strip())


def _emit_config(cfg, command):
    out = config_mod.output_dir(cfg, command)
    os.makedirs(out, exist_ok=True)
    io.write_json(os.path.join(out, "config.json"), cfg.to_dict())
    return out


def _density(cfg):
    return davies.SpectralDensity(kind=cfg.density, j=cfg.j)


def _print_table(rows):
    width = max(len(name) for name, _, _ in rows)
    for name, ok, detail in rows:
        print(f"{name:<{width}}  {PASS if ok else FAIL}  {detail}")


def resolve_observable(code, label: str) -> PauliOperator:
    """Sector labels (Z1, X3, Z1Z3, ...) or explicit Pauli strings."""
    named = {}
    for k in range(4):
        named[f"Z{k + 1}"] = code.logical_z[k]
        named[f"X{k + 1}"] = code.logical_x[k]
    if label in named:
        return named[label]
    parts = [label[i : i + 2] for i in range(0, len(label), 2)]
    if all(p in named for p in parts):
        return product([named[p] for p in parts], n=code.n)
    op = PauliOperator.from_string(label)
    if op.n != code.n:
        raise ValueError(f"observable {label!r} has {op.n} qubits, code has {code.n}")
    return op


# -- subcommands --------------------------------------------------------------


def cmd_build(cfg, args) -> int:
    out = _emit_config(cfg, "build")
    lat = lattice.build_hex_torus(cfg.size)
    code = code_mod.build_code(lat)
    io.write_json(os.path.join(out, "lattice.json"), lat.to_json_dict())
    io.write_json(
        os.path.join(out, "build.json"),
        {
            "n_plaquettes": lat.n_plaquettes,
            "n_vertices": lat.n_vertices,
            "n_edges": lat.n_edges,
            "stabilizer_rank": code.rank,
            "ground_degeneracy": code.degeneracy,
            "validation_failures": list(lattice.validate(lat).failures),
        },
    )
    print(f"built N={lat.n_plaquettes}: {lat.n_vertices} qubits, {lat.n_edges} edges, "
          f"rank {code.rank}, degeneracy {code.degeneracy} -> {out}")
    return 0


def cmd_check(cfg, args) -> int:
    out = _emit_config(cfg, "check")
    den = _density(cfg)
    rows = []

    lat = lattice.build_hex_torus(cfg.size)
    report = lattice.validate(lat)
    rows.append(("lattice-invariants", report.ok, f"{len(report.failures)} failures"))
    code = code_mod.build_code(lat)
    rows.append(("stabilizer-rank", code.rank == 2 * cfg.size - 4, f"rank={code.rank}"))
    rows.append(("ground-degeneracy", code.degeneracy == 16, f"degeneracy={code.degeneracy}"))

    ex = lattice.excitation_generators(lat)
    n_string = sum(len(s.vertices) for s in ex.strings)
    census_ok = n_string == 2 * cfg.size - 6 and len(ex.leftover) == 4
    rows.append(("excitation-census", census_ok, f"strings={n_string} leftover={len(ex.leftover)}"))
    rows.append(("observable-completeness", code_mod.observable_generators_complete(code), "rank 4N"))

    for c in range(1, 3):
        ops = code.bx_ops if c == 1 else code.bz_ops
        prods = [product([ops[p] for p in lat.plaquettes_of_color(col)], n=code.n) for col in range(3)]
        rows.append((f"color-constraints-{'xz'[c - 1]}", prods[0] == prods[1] == prods[2], "Eq-of-products"))

    # jump identities in structured form, at one site of each type
    for err_type in ("x", "z"):
        comps = davies.fourier_components(code, 0, err_type, beta=cfg.betas[0], density=den, j=cfg.j)
        total = {}
        for comp in comps + [c.adjoint() for c in comps]:
            for coeff, op in comp.terms():
                key = op.key()
                total[key] = total.get(key, 0.0) + coeff
        sigma = (PauliOperator.sigma_x if err_type == "x" else PauliOperator.sigma_z)(code.n, 0)
        resid = 0.0
        for key, coeff in total.items():
            expect = 1.0 if key == sigma.key() else 0.0
            resid = max(resid, abs(coeff - expect))
        rows.append((f"jump-sum-{err_type}", resid == 0.0, f"residual={resid:.2e}"))

    worst_sa, worst_pos, worst_kernel = 0.0, 0.0, 0.0
    dense_blocks = 2 ** (2 * cfg.size - 4) <= davies.DENSE_BLOCK_LIMIT
    pos_floor = SPEC_TOL["positivity"] if dense_blocks else -1e-7
    for beta in cfg.betas:
        gen = davies.build_lindbladian(code, beta, den, j=cfg.j)
        if dense_blocks:
            blocks = davies.sector_blocks(code, gen)
            for name, block in blocks.items():
                worst_sa = max(worst_sa, block.selfadjoint_residual())
                worst_pos = min(worst_pos, float(block.eigenvalues()[0]))
            ident = blocks["Z:0000"]
            worst_kernel = max(worst_kernel, float(np.max(np.abs(ident.matrix[:, 0]))))
        else:
            # matrix-free route for desk-oversized blocks
            reps = davies.sector_representatives(code)
            for name in ("Z:0000", "Z:1000", "X:1000", "Z:1010"):
                block = gen.walsh_block(reps[name], label=name)
                worst_sa = max(worst_sa, block.selfadjoint_residual())
                deflate = name == "Z:0000"
                lam = block.extremal_eigenvalues(k=2, tol=1e-8, deflate_kernel=deflate)
                worst_pos = min(worst_pos, float(lam[0]))
            ident = gen.walsh_block(reps["Z:0000"])
            image = ident.sparse_matrix() @ ident.kernel_candidate()
            worst_kernel = max(worst_kernel, float(np.max(np.abs(image))))
    rows.append(("self-adjointness", worst_sa <= SPEC_TOL["selfadjoint"], f"max residual={worst_sa:.2e}"))
    rows.append(("positivity", worst_pos >= pos_floor, f"min eigenvalue={worst_pos:.2e}"))
    rows.append(("identity-kernel", worst_kernel <= SPEC_TOL["identity_kernel"], f"|L(I)|={worst_kernel:.2e}"))

    if cfg.method in ("dense-oracle", "both"):
        gen = davies.build_lindbladian(code, cfg.betas[0], den, j=cfg.j)
        oracle = dense.DenseOracle(gen.model, gen.couplings, cfg.betas[0], den)
        rows.append(("dense-jump-sum", oracle.jump_sum_residual() <= 1e-12,
                     f"residual={oracle.jump_sum_residual():.2e}"))
        rows.append(("dense-adjoint-pairs", oracle.adjoint_pairing_residual() <= 1e-12,
                     f"residual={oracle.adjoint_pairing_residual():.2e}"))
        rows.append(("dense-rho-commutation", oracle.rho_commutation_residual() <= 1e-12,
                     f"residual={oracle.rho_commutation_residual():.2e}"))
        x = code.logical_z[0].dense().real
        rows.append(("dense-negativity-identity", oracle.negativity_identity_residual(x) <= 1e-10,
                     f"residual={oracle.negativity_identity_residual(x):.2e}"))

    _print_table(rows)
    io.write_json(
        os.path.join(out, "check.json"),
        {"checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in rows]},
    )
    return 0 if all(ok for _, ok, _ in rows) else 1


def cmd_gap(cfg, args) -> int:
    out = _emit_config(cfg, "gap")
    den = _density(cfg)
    code = code_mod.build_code(lattice.build_hex_torus(cfg.size))
    results = []
    ok = True
    for beta in cfg.betas:
        res = davies.gap_result(code, beta, den, j=cfg.j, kernel_tol=cfg.kernel_tol,
                                jobs=cfg.effective_jobs)
        results.append(io.gap_result_to_dict(res))
        ok &= res.selfadjoint_residual <= SPEC_TOL["selfadjoint"]
        if res.theorem_ok is not None:
            ok &= res.theorem_ok
    io.write_json(os.path.join(out, "gap.json"), {"points": results})
    io.write_csv(
        os.path.join(out, "gap_sweep.csv"),
        io.SWEEP_CSV_HEADER,
        [[r["beta"], r["global_gap"] if r["global_gap"] is not None
          else min(v for v in r["sector_minima"].values())] for r in results],
    )
    for r in results:
        print(f"beta={r['beta']}: global={r['global_gap']} bound={r['bound_rhs']} ok={r['theorem_ok']}")
    return 0 if ok else 1


def cmd_theorem(cfg, args) -> int:
    out = _emit_config(cfg, "theorem")
    den = _density(cfg)
    code = code_mod.build_code(lattice.build_hex_torus(cfg.size))
    report = davies.theorem_check(code, cfg.betas, den, j=cfg.j,
                                  kernel_tol=cfg.kernel_tol, jobs=cfg.effective_jobs)
    io.write_json(os.path.join(out, "theorem.json"), report)
    for p in report["points"]:
        print(f"beta={p['beta']}: lhs={p['lhs_gap_tcc']:.6e} rhs={p['rhs_bound']:.6e} "
              f"ratio={p['ratio']:.3f} {'ok' if p['ok'] else 'VIOLATED'}")
    return 0 if report["ok"] else 1


def cmd_autocorr(cfg, args) -> int:
    if 2 ** (2 * cfg.size - 4) > davies.DENSE_BLOCK_LIMIT:
        print("error: autocorr needs the dense block eigensystem; "
              f"size {cfg.size} exceeds the desk-scale budget (use 3 or 6)",
              file=sys.stderr)
        return 2
    out = _emit_config(cfg, "autocorr")
    den = _density(cfg)
    code = code_mod.build_code(lattice.build_hex_torus(cfg.size))
    grid = np.logspace(np.log10(cfg.t_min), np.log10(cfg.t_max), cfg.t_points) / cfg.j
    rows = []
    summary = {}
    ok = True
    for beta in cfg.betas:
        gen = davies.build_lindbladian(code, beta, den, j=cfg.j)
        for label in cfg.observables:
            op = resolve_observable(code, label)
            block = gen.block(op, label=label)
            coeffs = dynamics.coefficients(block, op)
            sw = dynamics.spectral_weights(block, coeffs, kernel_tol=cfg.kernel_tol)
            series = dynamics.autocorrelation(block, coeffs, grid, label=f"{label}@beta={beta:g}")
            env = dynamics.envelope(series, sw)
            rows.extend(io.autocorr_rows(series, env))
            fit = dynamics.fit_decay_rate(series, offset=sw.kernel_offset)
            sector = code_mod.sector_decompose(code, op)
            entry = {
                "beta": beta,
                "epsilon": fit.epsilon,
                "fit_residual": fit.residual,
                "kernel_offset": fit.offset,
                "min_contributing_rate": sw.min_contributing(),
                "sector": sector.name if sector else "not-in-centralizer",
                "monotone": bool(np.all(np.diff(series.values) <= 1e-10)),
                "envelope_ok": bool(np.all(series.values <= env + 1e-10)),
            }
            if fit.epsilon is not None:
                block_min = block.min_nonzero(cfg.kernel_tol)
                entry["rate_consistent"] = bool(fit.epsilon >= block_min - 1e-6)
                ok &= entry["rate_consistent"]
            ok &= entry["monotone"] and entry["envelope_ok"]
            summary[f"{label}@beta={beta:g}"] = entry
    io.write_csv(os.path.join(out, "autocorr.csv"), io.AUTOCORR_CSV_HEADER, rows)
    io.write_json(os.path.join(out, "autocorr.json"), summary)
    for key, entry in summary.items():
        print(f"{key}: epsilon={entry['epsilon']} sector={entry['sector']}")
    return 0 if ok else 1


def cmd_ising_scan(cfg, args) -> int:
    out = _emit_config(cfg, "ising-scan")
    den = _density(cfg)
    beta = cfg.betas[0]
    lengths = cfg.lengths
    if cfg.boundary == "periodic":
        lengths = tuple(length for length in lengths if length % 2 == 0)
    rows = ising.gap_scan(lengths, beta, den, j=cfg.j, kernel_tol=cfg.kernel_tol,
                          jobs=cfg.effective_jobs, homogeneous=args.homogeneous,
                          boundary=cfg.boundary)
    io.write_csv(os.path.join(out, "ising_scan.csv"), io.ISING_CSV_HEADER, rows)
    gaps = [g for _, _, g in rows]
    rel = (max(gaps) - min(gaps)) / min(gaps) if gaps else None
    io.write_json(
        os.path.join(out, "ising_scan.json"),
        {"beta": beta, "boundary": cfg.boundary, "lengths": list(lengths),
         "gaps": gaps, "max_rel_deviation": rel},
    )
    for length, b, g in rows:
        print(f"L={length}: gap={g:.10f}")
    if rel is not None:
        print(f"max relative deviation: {rel:.4f}")
    return 0


def cmd_oracle_compare(cfg, args) -> int:
    out = _emit_config(cfg, "oracle-compare")
    den = _density(cfg)
    if cfg.size != 3:
        print("error: oracle-compare requires the minimal lattice (size 3)", file=sys.stderr)
        return 2
    code = code_mod.build_code(lattice.build_hex_torus(cfg.size))
    beta = cfg.betas[0]
    gen = davies.build_lindbladian(code, beta, den, j=cfg.j)
    oracle = dense.DenseOracle(gen.model, gen.couplings, beta, den)

    reps = dict(davies.sector_representatives(code))
    rng = np.random.default_rng(7)
    all_reps = gen.coset_representatives()
    for k in rng.choice(len(all_reps), size=args.extra_random, replace=False):
        reps[f"random-{k}"] = all_reps[int(k)]

    import scipy.linalg

    worst = 0.0
    per_coset = {}
    for name in sorted(reps):
        block = gen.block(reps[name])
        a_dense = oracle.block_matrix(block.basis())
        g_dense = oracle.block_gram(block.basis())
        m = g_dense @ a_dense
        lam = scipy.linalg.eigh(0.5 * (m + m.T), g_dense, eigvals_only=True)
        dev = float(np.max(np.abs(np.sort(lam) - block.eigenvalues())))
        per_coset[name] = dev
        worst = max(worst, dev)
    ok = worst <= SPEC_TOL["oracle_spectra"]
    io.write_json(
        os.path.join(out, "oracle_compare.json"),
        {"beta": beta, "max_spectrum_deviation": worst, "tolerance": SPEC_TOL["oracle_spectra"],
         "per_coset": per_coset, "ok": ok},
    )
    print(f"max spectrum deviation over {len(per_coset)} cosets: {worst:.3e} "
          f"({'ok' if ok else 'FAIL'})")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
