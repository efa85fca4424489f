"""Command-line front end.

The CLI is a thin client of the HTTP service: every command builds a request
and posts it to the API, then writes the response artifacts locally.  By
default requests are served by an in-process application instance (no server
needed); pass ``--server http://host:port`` to talk to a running instance
instead.

Exit codes: 0 success, 1 domain error (capacity, exhaustion, parse, ...),
2 usage or I/O error.  All outputs are deterministic given the flags,
including ``--seed``; no timestamps are written.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

from .errors import TrapmuxError


def _client(args: argparse.Namespace) -> httpx.Client:
    if getattr(args, "server", None):
        return httpx.Client(base_url=args.server, timeout=600.0)
    from .service.app import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.Client(transport=transport, base_url="http://trapmux.local",
                        timeout=None)


def _post(args: argparse.Namespace, path: str, payload: dict) -> dict:
    with _client(args) as client:
        resp = client.post(path, json=payload)
        resp.raise_for_status()
        return resp.json()


def _device_payload(args: argparse.Namespace) -> dict:
    if getattr(args, "device", None):
        return json.loads(Path(args.device).read_text())
    return {}


def _program_payload(path: str, pid: str | None = None) -> dict:
    return {"id": pid or Path(path).stem, "text": Path(path).read_text()}


def _write_json(path: str, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text)


def _parse_sizes(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",") if x]


def _trace_csv(rows: list[dict]) -> str:
    cols = ["tick", "kind", "tenant", "gate_index", "ion",
            "src_trap", "dst_trap", "nbar_dst", "fidelity"]
    out = [",".join(cols)]
    for row in rows:
        out.append(",".join("" if row.get(c) is None else str(row.get(c))
                            for c in cols))
    return "\n".join(out) + "\n"


# -- commands --------------------------------------------------------------

def cmd_compile(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "programs": [_program_payload(p) for p in args.program],
        "mapping": args.mapping,
        "seed": args.seed,
        "random_scope": args.random_scope,
        "hybrid_draws": args.hybrid_draws,
        "include_trace": bool(args.trace),
    }
    body = _post(args, "/compile", payload)
    trace = body.pop("trace", None)
    if args.trace:
        _write_text(args.trace, _trace_csv(trace or []))
    _write_json(args.out, body)
    print(f"shuttle_count={body['shuttle_count']} -> {args.out}")
    return 0


def cmd_attack_systematic(args: argparse.Namespace) -> int:
    payload = {
        "trap_capacity": args.trap_cap,
        "comm_capacity": args.comm_cap,
        "assumed_victim_size": args.assumed_victim,
        "sc_block_length": args.sc_length,
        "seed": args.seed,
    }
    if args.adversary_size is not None:
        payload["adversary_size"] = args.adversary_size
    body = _post(args, "/attack/systematic", payload)
    _write_text(args.out, body["program"])
    _write_json(_sidecar_path(args.out), body["sidecar"])
    print(f"{body['sidecar']['n_gates']} gates, "
          f"predicted shuttles {body['sidecar']['predicted_shuttles']} -> {args.out}")
    return 0


def cmd_attack_random(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "candidates": args.candidates,
        "victim_sizes": _parse_sizes(args.victim_sizes),
        "seed": args.seed,
        "include_matrix": args.matrix,
    }
    body = _post(args, "/attack/random", payload)
    _write_text(args.out, body["program"])
    sidecar = dict(body["sidecar"])
    sidecar["stats"] = body["stats"]
    _write_json(_sidecar_path(args.out), sidecar)
    print(f"best candidate {body['sidecar']['best_index']} "
          f"(mean shuttles {body['sidecar']['best_mean_shuttles']:.2f}) -> {args.out}")
    return 0


def cmd_attack_prune(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "program": Path(args.program).read_text(),
        "metric": args.prune_metric,
        "victim_sizes": _parse_sizes(args.victim_sizes),
        "seed": args.seed,
    }
    body = _post(args, "/attack/prune", payload)
    _write_text(args.out, body["program"])
    report = {k: body[k] for k in
              ("baseline_shuttles", "pruned_shuttles", "removed_gates",
               "kept_gates", "log")}
    report["schema"] = "trapmux.prune/1"
    _write_json(_sidecar_path(args.out), report)
    print(f"removed {body['removed_gates']} gates, "
          f"shuttles {body['baseline_shuttles']} -> {body['pruned_shuttles']}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "method": args.method,
        "sizes": _parse_sizes(args.sizes),
        "sc_length": args.sc_length,
        "seed": args.seed,
        "candidates": args.candidates,
    }
    body = _post(args, "/sweep", payload)
    _write_text(args.out, body.pop("csv"))
    if args.stats:
        _write_json(args.stats, body)
    print(f"best assumption {body['best_assumption']} -> {args.out}")
    return 0


def cmd_defend_hybrid(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "programs": [_program_payload(p) for p in args.program],
        "seed": args.seed,
        "draws": args.draws,
    }
    body = _post(args, "/defend/hybrid", payload)
    _write_json(args.out, body)
    print(f"policy {body['policy']} with {body['chosen_shuttles']} shuttles")
    return 0


def cmd_defend_pad(args: argparse.Namespace) -> int:
    payload = {
        "program": Path(args.program).read_text(),
        "target_size": args.target,
        "id": Path(args.program).stem,
    }
    body = _post(args, "/defend/pad", payload)
    _write_text(args.out, body["program"])
    print(f"padded to {body['n_qubits']} qubits "
          f"({body['dummy_qubits']} dummies) -> {args.out}")
    return 0


def cmd_defend_admit(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "programs": [_program_payload(p) for p in args.program],
        "max_shuttles": args.max_shuttles,
    }
    body = _post(args, "/defend/admit", payload)
    _write_json(args.out, body)
    modes = ", ".join(f"{e['tenant']}:{e['mode']}" for e in body["programs"])
    print(f"admission: {modes}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    payload = {"kind": args.kind, "n": args.n,
               "density": args.density, "seed": args.seed}
    body = _post(args, "/bench", payload)
    _write_text(args.out, body["program"])
    print(f"{body['sidecar']['n_gates']} gates -> {args.out}")
    return 0


def cmd_analyze_reduction(args: argparse.Namespace) -> int:
    payload = {
        "device": _device_payload(args),
        "victim": _program_payload(args.victim, "victim"),
        "attack": _program_payload(args.attack, "adv"),
        "policy": args.mapping,
        "seed": args.seed,
    }
    body = _post(args, "/analyze/reduction", payload)
    _write_json(args.out, body)
    ratio = body["ratio"] if body["ratio"] is not None else body["ratio_sentinel"]
    print(f"fidelity reduction {ratio}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("trapmux.service.app:app", host=args.host, port=args.port)
    return 0


def _sidecar_path(out: str) -> str:
    return str(Path(out).with_suffix(".json"))


# -- parser ----------------------------------------------------------------

def _add_server(p: argparse.ArgumentParser) -> None:
    p.add_argument("--server", help="URL of a running service; default is in-process")


def _add_device(p: argparse.ArgumentParser) -> None:
    p.add_argument("--device", help="device config JSON file (default: 2 traps, cap 15)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trapmux",
        description="Multi-trap trapped-ion compile service client")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="map and schedule programs together")
    _add_device(p)
    _add_server(p)
    p.add_argument("--program", action="append", required=True,
                   help=".qprog file; repeat for co-resident tenants")
    p.add_argument("--mapping", choices=["greedy", "random", "hybrid"],
                   default="greedy")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--random-scope", choices=["segment", "trap"],
                   default="segment")
    p.add_argument("--hybrid-draws", type=int, default=1)
    p.add_argument("--out", required=True, help="summary JSON path")
    p.add_argument("--trace", help="event trace CSV path")
    p.set_defaults(func=cmd_compile)

    attack = sub.add_parser("attack", help="generate adversarial programs")
    asub = attack.add_subparsers(dest="attack_command", required=True)

    p = asub.add_parser("systematic", help="white-box generator")
    _add_server(p)
    p.add_argument("--trap-cap", type=int, default=15)
    p.add_argument("--comm-cap", type=int, default=2)
    p.add_argument("--assumed-victim", type=int, required=True)
    p.add_argument("--sc-length", type=int, default=80)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--adversary-size", type=int, default=None)
    p.add_argument("--out", required=True, help=".qprog path (sidecar JSON next to it)")
    p.set_defaults(func=cmd_attack_systematic)

    p = asub.add_parser("random", help="black-box candidate search")
    _add_device(p)
    _add_server(p)
    p.add_argument("--candidates", type=int, default=1000)
    p.add_argument("--victim-sizes", default="2..12",
                   help="e.g. 2..12 or 2,4,8")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--matrix", action="store_true",
                   help="include the full candidate/size shuttle matrix")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack_random)

    p = asub.add_parser("prune", help="drop gates that do not affect shuttles")
    _add_device(p)
    _add_server(p)
    p.add_argument("--program", required=True)
    p.add_argument("--victim-sizes", default="12")
    p.add_argument("--prune-metric", choices=["single", "mean"], default="single")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack_prune)

    p = sub.add_parser("sweep", help="victim-size assumption sweep")
    _add_device(p)
    _add_server(p)
    p.add_argument("--method", choices=["systematic", "random"],
                   default="systematic")
    p.add_argument("--sizes", default="2..12")
    p.add_argument("--sc-length", type=int, default=80)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--candidates", type=int, default=100,
                   help="random-method candidates per assumption")
    p.add_argument("--out", required=True, help="matrix CSV path")
    p.add_argument("--stats", help="per-assumption stats JSON path")
    p.set_defaults(func=cmd_sweep)

    defend = sub.add_parser("defend", help="countermeasures")
    dsub = defend.add_subparsers(dest="defend_command", required=True)

    p = dsub.add_parser("hybrid", help="greedy-vs-random mapping arbitration")
    _add_device(p)
    _add_server(p)
    p.add_argument("--program", action="append", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_defend_hybrid)

    p = dsub.add_parser("pad", help="dummy-qubit padding")
    _add_server(p)
    p.add_argument("--program", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_defend_pad)

    p = dsub.add_parser("admit", help="max-shuttle admission control")
    _add_device(p)
    _add_server(p)
    p.add_argument("--program", action="append", required=True)
    p.add_argument("--max-shuttles", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_defend_admit)

    bench = sub.add_parser("bench", help="benchmark skeleton generators")
    bsub = bench.add_subparsers(dest="bench_command", required=True)
    for kind in ("qft", "adder", "qaoa"):
        p = bsub.add_parser(kind)
        _add_server(p)
        p.add_argument("--n", type=int, required=True)
        if kind == "qaoa":
            p.add_argument("--density", type=float, default=0.5)
            p.add_argument("--seed", type=int, default=0)
        else:
            p.set_defaults(density=0.5, seed=0)
        p.add_argument("--out", required=True)
        p.set_defaults(func=cmd_bench, kind=kind)

    analyze = sub.add_parser("analyze", help="experiments")
    nsub = analyze.add_subparsers(dest="analyze_command", required=True)
    p = nsub.add_parser("reduction", help="victim fidelity reduction under attack")
    _add_device(p)
    _add_server(p)
    p.add_argument("--victim", required=True)
    p.add_argument("--attack", required=True)
    p.add_argument("--mapping", choices=["greedy", "random"], default="greedy")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_reduction)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except httpx.HTTPStatusError as exc:
        detail = None
        try:
            detail = exc.response.json().get("detail")
        except Exception:
            pass
        if isinstance(detail, dict) and "error" in detail:
            print(f"error ({detail.get('kind', 'domain')}): {detail['error']}",
                  file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 1 if exc.response.status_code == 400 else 2
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 2
    except TrapmuxError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
