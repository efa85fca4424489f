"""FastAPI application wrapping the core package.

All endpoints are stateless RPC over the library: requests carry programs as
`.qprog` text plus an inline device description, responses carry JSON
reports (and optionally the event trace).  Domain errors map to HTTP 400
with the error kind; malformed request shapes are FastAPI's usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import fidelity_reduction, sweep_assumptions
from ..attacks.random_search import prune, random_victim, search_best
from ..attacks.systematic import AttackSpec, assemble_detailed
from ..bench import gen_adder, gen_qaoa, gen_qft
from ..circuit import Program, emit_program, parse_program
from ..defenses import admit, hybrid_map, pad_victim
from ..errors import TrapmuxError
from ..run import compile_corun
from ..scheduler import summary, trace_rows
from ..seeding import derive_seed
from . import schemas as sc


def _parse(p: sc.ProgramIn) -> Program:
    return parse_program(p.text, pid=p.id)


def create_app() -> FastAPI:
    app = FastAPI(
        title="trapmux",
        version=__version__,
        description="Multi-trap trapped-ion compile service with "
                    "multi-programming, adversarial workload generation "
                    "and scheduling defenses.",
    )

    @app.exception_handler(TrapmuxError)
    async def _domain_error(_: Request, exc: TrapmuxError) -> JSONResponse:
        return JSONResponse(status_code=400,
                            content={"detail": {"error": str(exc), "kind": exc.kind}})

    @app.get("/health", response_model=sc.HealthResponse)
    def health() -> sc.HealthResponse:
        return sc.HealthResponse(status="ok", version=__version__)

    @app.post("/compile", response_model=sc.CompileResponse,
              response_model_exclude_none=True)
    def compile_endpoint(req: sc.CompileRequest) -> sc.CompileResponse:
        cfg = req.device.to_config()
        programs = [_parse(p) for p in req.programs]
        hybrid_report = None
        if req.mapping == "hybrid":
            decision = hybrid_map(programs, cfg, req.seed or 0, draws=req.hybrid_draws)
            schedule = decision.schedule
            hybrid_report = decision.report()
            policy = f"hybrid->{decision.policy}"
        else:
            schedule = compile_corun(programs, cfg, req.mapping, seed=req.seed,
                                     random_scope=req.random_scope)
            policy = req.mapping
        body = summary(schedule)
        body["mapping_policy"] = policy
        body["hybrid"] = hybrid_report
        if req.include_trace:
            body["trace"] = [
                {k: (None if v == "" else v) for k, v in row.items()}
                for row in trace_rows(schedule)
            ]
        return sc.CompileResponse(**body)

    @app.post("/attack/systematic", response_model=sc.AttackResponse)
    def attack_systematic(req: sc.SystematicAttackRequest) -> sc.AttackResponse:
        spec = AttackSpec(
            trap_capacity=req.trap_capacity,
            comm_capacity=req.comm_capacity,
            assumed_victim_size=req.assumed_victim_size,
            sc_block_length=req.sc_block_length,
            seed=req.seed,
            adversary_size=req.adversary_size,
        )
        attack = assemble_detailed(spec)
        return sc.AttackResponse(program=emit_program(attack.program),
                                 sidecar=attack.sidecar())

    @app.post("/attack/random", response_model=sc.RandomAttackResponse)
    def attack_random(req: sc.RandomAttackRequest) -> sc.RandomAttackResponse:
        cfg = req.device.to_config()
        best, stats = search_best(req.candidates, req.victim_sizes, cfg,
                                  req.seed, n_qubits=req.n_qubits)
        report = stats.report()
        if not req.include_matrix:
            report.pop("shuttle_matrix")
        sidecar = {
            "schema": "trapmux.attack/1",
            "method": "random",
            "n_qubits": best.n_qubits,
            "n_gates": len(best.gates),
            "candidates": req.candidates,
            "victim_sizes": list(req.victim_sizes),
            "seed": req.seed,
            "best_index": stats.best_index,
            "best_mean_shuttles": stats.best_mean,
        }
        return sc.RandomAttackResponse(program=emit_program(best),
                                       sidecar=sidecar, stats=report)

    @app.post("/attack/prune", response_model=sc.PruneResponse)
    def attack_prune(req: sc.PruneRequest) -> sc.PruneResponse:
        cfg = req.device.to_config()
        program = parse_program(req.program, pid="adv")
        sizes = req.victim_sizes if req.metric == "mean" else req.victim_sizes[:1]
        victims = [random_victim(s, 80, derive_seed(req.seed, "victim", s))
                   for s in sizes]
        baseline = sum(compile_corun([program, v], cfg).shuttle_count
                       for v in victims) / len(victims)
        pruned, log = prune(program, victims, cfg)
        after = sum(compile_corun([pruned, v], cfg).shuttle_count
                    for v in victims) / len(victims)
        return sc.PruneResponse(
            program=emit_program(pruned),
            baseline_shuttles=baseline,
            pruned_shuttles=after,
            removed_gates=sum(1 for step in log if step.removed),
            kept_gates=len(pruned.gates),
            log=[{"gate_index": s.gate_index, "removed": s.removed,
                  "shuttles_without": s.shuttles_without} for s in log],
        )

    @app.post("/sweep")
    def sweep(req: sc.SweepRequest) -> dict:
        cfg = req.device.to_config()
        result = sweep_assumptions(req.method, cfg, req.sizes, req.sc_length,
                                   req.seed, n_candidates=req.candidates)
        body = result.report()
        body["csv"] = result.to_csv()
        return body

    @app.post("/defend/hybrid")
    def defend_hybrid(req: sc.HybridRequest) -> dict:
        cfg = req.device.to_config()
        programs = [_parse(p) for p in req.programs]
        return hybrid_map(programs, cfg, req.seed, draws=req.draws).report()

    @app.post("/defend/pad", response_model=sc.PadResponse)
    def defend_pad(req: sc.PadRequest) -> sc.PadResponse:
        program = parse_program(req.program, pid=req.id)
        padded = pad_victim(program, req.target_size)
        return sc.PadResponse(program=emit_program(padded),
                              n_qubits=padded.n_qubits,
                              dummy_qubits=padded.n_qubits - program.n_qubits)

    @app.post("/defend/admit")
    def defend_admit(req: sc.AdmitRequest) -> dict:
        cfg = req.device.to_config()
        programs = [_parse(p) for p in req.programs]
        return admit(programs, cfg, req.max_shuttles).report()

    @app.post("/bench", response_model=sc.AttackResponse)
    def bench(req: sc.BenchRequest) -> sc.AttackResponse:
        if req.kind == "qft":
            program = gen_qft(req.n)
        elif req.kind == "adder":
            program = gen_adder(req.n)
        else:
            program = gen_qaoa(req.n, req.density, req.seed)
        sidecar = {"schema": "trapmux.bench/1", "kind": req.kind, "n": req.n,
                   "n_gates": len(program.gates)}
        if req.kind == "qaoa":
            sidecar.update(density=req.density, seed=req.seed)
        return sc.AttackResponse(program=emit_program(program), sidecar=sidecar)

    @app.post("/analyze/reduction")
    def analyze_reduction(req: sc.ReductionRequest) -> dict:
        cfg = req.device.to_config()
        victim = _parse(req.victim)
        attack = _parse(req.attack)
        return fidelity_reduction(victim, attack, cfg, policy=req.policy,
                                  seed=req.seed).report()

    return app


app = create_app()
