"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input or infinite
type, 3 BFS cap exceeded.  Reports are JSON with sorted keys and carry no
timings, so identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import formats
from .atomic import (
    MonomialBasis,
    check_proper_lemma,
    expand_in_basis,
    proof_inequalities,
    random_combination,
    verify_atomicity,
)
from .cluster import (
    DEFAULT_CAP,
    CapExceeded,
    QuiverError,
    enumerate_exchange_graph,
    initial_seed,
    is_finite_type,
    matrix_to_quiver,
    mutate_along,
    positive_root_count,
)
from .laurent import LaurentError, LaurentPoly
from .qp import (
    QP,
    QPError,
    build_cluster_rep,
    e_invariants,
    euler_characteristics,
    g_vector,
    primitive_potential,
    qp_mutate,
    x_of_rep,
)

log = logging.getLogger("clusteratom")

COMMANDS = ("mutate", "enumerate", "expand", "rep", "xcheck", "verify-lemma", "verify-atomic")
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    command: str
    walk: tuple[int, ...] = ()
    k: int | None = None
    monomial: tuple[int, ...] | None = None
    max_deg: int = 3
    cap: int = DEFAULT_CAP
    primes: int = 64
    threads: int = 1
    samples: int = 100
    seed: int = 0
    out: str | None = None
    figures: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.cap <= 0 or self.primes <= 0 or self.threads <= 0 or self.samples < 0:
            raise InputError("cap, primes and threads must be positive")
        if self.max_deg < 0:
            raise InputError("max-deg must be nonnegative")


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="clusteratom",
        description="Cluster algebras of finite type: mutation, expansions, representations, verification.",
    )
    p.add_argument("command_pos", nargs="?", choices=COMMANDS, metavar="COMMAND", help=" | ".join(COMMANDS))
    p.add_argument("--command", choices=COMMANDS, help="alternative to the positional command")
    p.add_argument("--input", "-i", required=True, help="JSON quiver/matrix/QP file, or a Dynkin name such as A3")
    p.add_argument("--walk", type=_int_list, default=(), help="mutation sequence, 1-based, e.g. 1,2,1")
    p.add_argument("--k", type=int, help="cluster index (1-based)")
    p.add_argument("--monomial", type=_int_list, help="exponent vector a1,..,an for a cluster monomial")
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of seeds in a BFS")
    p.add_argument("--primes", type=int, default=64, help="prime budget for point counting")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--samples", type=int, default=100, help="random combinations for verify-atomic")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for verify-atomic")
    p.add_argument("--out", "-o", help="write the JSON report here instead of stdout")
    p.add_argument(
        "--figures",
        nargs="?",
        const="",
        help="write PNG figures to this directory (default: next to --out)",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command or args.command_pos
    if command is None:
        raise InputError("no command given")
    if args.command and args.command_pos and args.command != args.command_pos:
        raise InputError("conflicting commands")
    cfg = RunConfig(
        input=args.input,
        command=command,
        walk=args.walk,
        k=args.k,
        monomial=args.monomial,
        max_deg=args.max_deg,
        cap=args.cap,
        primes=args.primes,
        threads=args.threads,
        samples=args.samples,
        seed=args.seed,
        out=args.out,
        figures=args.figures,
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# helpers


def _zero_based(walk: Sequence[int], n: int) -> list[int]:
    out = []
    for v in walk:
        if not 1 <= v <= n:
            raise InputError(f"vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def _target(cfg: RunConfig, n: int) -> tuple[int | None, tuple[int, ...] | None]:
    if (cfg.k is None) == (cfg.monomial is None):
        raise InputError("give exactly one of --k and --monomial")
    if cfg.k is not None:
        if not 1 <= cfg.k <= n:
            raise InputError(f"--k must be in 1..{n}")
        return cfg.k - 1, None
    if len(cfg.monomial) != n or any(a < 0 for a in cfg.monomial):
        raise InputError(f"--monomial needs {n} nonnegative integers")
    return None, cfg.monomial


def _require_finite(B, cap: int):
    report = is_finite_type(B, cap)
    if not report.finite:
        raise InputError("input is not of finite type")
    return report


def _root_qp(B, qp: QP | None) -> QP:
    if qp is not None:
        return qp
    A = matrix_to_quiver(B)
    return QP(A, primitive_potential(A))


def _figure_dir(cfg: RunConfig) -> Path | None:
    if cfg.figures is None:
        return None
    if cfg.figures:
        d = Path(cfg.figures)
    elif cfg.out:
        d = Path(cfg.out).resolve().parent
    else:
        d = Path.cwd()
    d.mkdir(parents=True, exist_ok=True)
    return d


def _stem(cfg: RunConfig) -> str:
    return Path(cfg.out).stem if cfg.out else cfg.command


# ---------------------------------------------------------------------------
# commands


def cmd_mutate(cfg: RunConfig, B, qp: QP | None) -> tuple[dict, int]:
    n = len(B)
    walk = _zero_based(cfg.walk, n)
    seed = mutate_along(initial_seed(B), walk)
    report = {
        "walk": list(cfg.walk),
        "matrix": formats.matrix_to_json(seed.B),
        "quiver": formats.quiver_to_json(matrix_to_quiver(seed.B)),
        "cluster": [str(u) for u in seed.cluster],
    }
    try:
        cur = _root_qp(B, qp)
        steps = []
        for k in walk:
            cur, step = qp_mutate(cur, k)
            steps.append(step.as_json())
        report["qp"] = formats.qp_to_json(cur)
        report["qp_steps"] = steps
    except QPError as exc:
        report["qp"] = None
        report["qp_error"] = str(exc)
    return report, EXIT_OK


def cmd_enumerate(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    graph = enumerate_exchange_graph(B, cfg.cap)
    ft = is_finite_type(B, cfg.cap)
    report = {
        "clusters": len(graph.clusters),
        "variables": len(graph.variables),
        "dynkin_type": ft.dynkin_type,
        "cluster_list": [[str(u) for u in graph.sorted_cluster(i)] for i in range(len(graph.clusters))],
        "variable_list": [str(u) for u in graph.variables],
        "adjacency": [list(e) for e in graph.edges],
    }
    status = EXIT_OK
    if ft.dynkin_type:
        expected = positive_root_count(ft.dynkin_type) + len(B)
        report["expected_variables"] = expected
        if expected != len(graph.variables):
            status = EXIT_FAIL
    figs = _figure_dir(cfg)
    if figs:
        from .plotting import plot_exchange_graph

        path = plot_exchange_graph(len(graph.clusters), graph.edges, figs / f"{_stem(cfg)}_exchange_graph.png")
        report["figures"] = [path.name]
    return report, status


def cmd_expand(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    n = len(B)
    walk = _zero_based(cfg.walk, n)
    k, mono = _target(cfg, n)
    seed = mutate_along(initial_seed(B), walk)
    if k is not None:
        value = seed.cluster[k]
    else:
        value = LaurentPoly.one(n)
        for u, a in zip(seed.cluster, mono):
            value = value * u ** a
    return {"walk": list(cfg.walk), "k": cfg.k, "monomial": mono and list(mono), "expansion": str(value)}, EXIT_OK


def cmd_rep(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    n = len(B)
    _require_finite(B, cfg.cap)
    walk = _zero_based(cfg.walk, n)
    k, mono = _target(cfg, n)
    dec = build_cluster_rep(B, walk, k=k, exponents=mono, qp0=_root_qp(B, qp))
    seed = mutate_along(initial_seed(B), walk)
    if k is not None:
        symbolic = seed.cluster[k]
    else:
        symbolic = LaurentPoly.one(n)
        for u, a in zip(seed.cluster, mono):
            symbolic = symbolic * u ** a
    chi = euler_characteristics(dec, cfg.primes)
    X = x_of_rep(dec, B, cfg.primes)
    F = LaurentPoly({e: c for e, c in chi.items()}, n)
    report = {
        "walk": list(cfg.walk),
        "dim": list(dec.dims),
        "decoration": list(dec.decoration),
        "g": list(g_vector(dec)),
        "F": str(F).replace("x", "y"),
        "X": str(X),
        "symbolic": str(symbolic),
        "agree": X == symbolic,
        "E": e_invariants(dec, dec)["e_self_M"],
        "decorated_rep": formats.decorated_to_json(dec),
    }
    if dec.is_positive() and not dec.rep.is_zero():
        report["proof_inequalities"] = proof_inequalities(dec, B, cfg.primes).as_json()
    ok = report["agree"] and report["E"] == 0 and report.get("proof_inequalities", {"ok": True})["ok"]
    figs = _figure_dir(cfg)
    if figs:
        from .plotting import plot_rep

        path = plot_rep(dec.dims, report["g"], chi, figs / f"{_stem(cfg)}_rep.png")
        report["figures"] = [path.name]
    return report, EXIT_OK if ok else EXIT_FAIL


def _xcheck_seed(args):
    B, walk, qp, primes = args
    out = []
    for k in range(len(B)):
        dec = build_cluster_rep(B, walk, k=k, qp0=qp)
        X = x_of_rep(dec, B, primes)
        symbolic = mutate_along(initial_seed(B), walk).cluster[k]
        out.append((k, X == symbolic, str(X), str(symbolic), e_invariants(dec, dec)["e_self_M"]))
    return out


def _pool_map(fn, tasks, threads: int):
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def cmd_xcheck(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    _require_finite(B, cfg.cap)
    graph = enumerate_exchange_graph(B, cfg.cap)
    root = _root_qp(B, qp)
    tasks = [(B, list(s.walk), root, cfg.primes) for s in graph.seeds]
    results = _pool_map(_xcheck_seed, tasks, cfg.threads)
    failures, bad_clusters, checks = [], [], 0
    for i, res in enumerate(results):
        for k, ok, X, sym, E in res:
            checks += 1
            if not ok or E != 0:
                failures.append({"cluster": i, "k": k + 1, "X": X, "symbolic": sym, "E": E})
                bad_clusters.append(i)
    report = {"clusters": len(graph.clusters), "checks": checks, "failures": failures, "ok": not failures}
    figs = _figure_dir(cfg)
    if figs:
        from .plotting import plot_exchange_graph

        path = plot_exchange_graph(
            len(graph.clusters), graph.edges, figs / f"{_stem(cfg)}_xcheck.png", "pipeline agreement", bad_clusters
        )
        report["figures"] = [path.name]
    return report, EXIT_OK if not failures else EXIT_FAIL


def cmd_verify_lemma(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    _require_finite(B, cfg.cap)
    graph = enumerate_exchange_graph(B, cfg.cap)
    rep = check_proper_lemma(graph, cfg.max_deg, threads=cfg.threads)
    report = rep.as_json()
    figs = _figure_dir(cfg)
    if figs:
        from .plotting import plot_lemma

        path = plot_lemma(rep.per_cluster, figs / f"{_stem(cfg)}_lemma.png")
        report["figures"] = [path.name]
    return report, EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify_atomic(cfg: RunConfig, B, qp) -> tuple[dict, int]:
    _require_finite(B, cfg.cap)
    graph = enumerate_exchange_graph(B, cfg.cap)
    basis = MonomialBasis(graph, cfg.max_deg)
    rng = np.random.default_rng(cfg.seed)
    failures = []
    basis_ok = 0
    for j, m in enumerate(basis.monomials):
        r = verify_atomicity(m.expansion, basis=basis)
        exp = expand_in_basis(m.expansion, basis=basis)
        if r.theorem_consistent and r.is_positive and exp.coefficients == {m: 1}:
            basis_ok += 1
        else:
            failures.append({"kind": "basis element", "monomial": m.label(), **r.as_json()})
    sample_ok = 0
    for s in range(cfg.samples):
        coeffs = random_combination(basis, rng)
        p = basis.combine(coeffs)
        r = verify_atomicity(p, basis=basis)
        recovered = expand_in_basis(p, basis=basis).vector(basis)
        if r.theorem_consistent and recovered == coeffs:
            sample_ok += 1
        else:
            failures.append({"kind": "sample", "index": s, "element": str(p), **r.as_json()})
    report = {
        "max_deg": cfg.max_deg,
        "basis_size": len(basis),
        "basis_checked": len(basis.monomials),
        "basis_ok": basis_ok,
        "samples": cfg.samples,
        "samples_ok": sample_ok,
        "failures": failures,
        "ok": not failures,
    }
    return report, EXIT_OK if not failures else EXIT_FAIL


HANDLERS = {
    "mutate": cmd_mutate,
    "enumerate": cmd_enumerate,
    "expand": cmd_expand,
    "rep": cmd_rep,
    "xcheck": cmd_xcheck,
    "verify-lemma": cmd_verify_lemma,
    "verify-atomic": cmd_verify_atomic,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns the exit code and the JSON-ready report."""
    try:
        cfg.validate()
        B, qp = formats.load_input(cfg.input)
        report, code = HANDLERS[cfg.command](cfg, B, qp)
    except CapExceeded as exc:
        return EXIT_CAP, {"error": str(exc), "kind": "cap"}
    except (InputError, formats.FormatError, QuiverError, QPError, IndexError) as exc:
        return EXIT_INPUT, {"error": str(exc), "kind": "input"}
    except (LaurentError, AssertionError) as exc:
        return EXIT_FAIL, {"error": str(exc), "kind": "verification"}
    report = {"command": cfg.command, "status": "ok" if code == EXIT_OK else "fail", **report}
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
    except InputError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, report = run(cfg)
    text = formats.dumps(report)
    if cfg.out:
        Path(cfg.out).write_text(text)
        log.info("wrote %s", cfg.out)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
