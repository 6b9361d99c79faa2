"""HTTP facade over the benchmark registry and the bounds calculators.

The CLI mounts this app in-process; it can also be served standalone with
uvicorn for shared use.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse

from .. import __version__
from ..bench import MODEL_SPECS, Registry, RegistryError
from ..bounds import (
    HypothesisClassSpec,
    compression_generalization_bound,
    hidden_worm_bound,
    max_class_log_size,
    required_samples,
    rule_class_log_size,
    simulate_hidden_worm,
)
from ..numeric import geometric_cross_entropy, geometric_entropy, geometric_kl
from . import schemas


def _class_spec(body: schemas.ClassSpecIn) -> HypothesisClassSpec:
    if body.size is not None:
        return HypothesisClassSpec.of_size(body.size)
    if body.ln_size is not None:
        return HypothesisClassSpec(body.ln_size)
    raise HTTPException(422, detail="hypothesis_class needs size or ln_size")


def _value(result) -> schemas.ValueOut:
    return schemas.ValueOut(quantity=result.quantity, value=result.value,
                            unit=result.unit)


def create_app(home: str | None = None) -> FastAPI:
    app = FastAPI(title="crmbench", version=__version__)

    def registry() -> Registry:
        # re-read per request so external edits to the manifest are seen
        return Registry(home)

    @app.exception_handler(RegistryError)
    async def _registry_error(request, exc: RegistryError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"version": __version__}

    @app.get("/models", response_model=list[schemas.ModelOut])
    def models():
        return [schemas.ModelOut(model_id=s.model_id, kind=s.kind,
                                 sampleable=s.sampleable)
                for s in MODEL_SPECS.values()]

    @app.get("/datasets", response_model=list[schemas.DatasetOut])
    def datasets():
        return sorted(registry().state["datasets"].values(),
                      key=lambda d: d["id"])

    @app.post("/datasets", response_model=schemas.DatasetOut)
    def register(body: schemas.DatasetIn):
        return registry().register_dataset(body.path, body.kind, body.id)

    @app.post("/runs", response_model=schemas.RunOut)
    def run(body: schemas.RunIn):
        return registry().run(body.dataset, body.model, body.seed)

    @app.get("/leaderboard/{dataset_id}", response_model=schemas.LeaderboardOut)
    def leaderboard(dataset_id: str):
        rows = registry().leaderboard(dataset_id)
        return schemas.LeaderboardOut(dataset=dataset_id, rows=rows)

    @app.post("/samples", response_model=schemas.SampleOut)
    def sample(body: schemas.SampleIn):
        text = registry().sample(body.model, body.count, body.seed)
        return schemas.SampleOut(model=body.model, count=body.count,
                                 seed=body.seed, text=text)

    @app.get("/report")
    def report(format: str = Query("json", pattern="^(json|table)$")):
        reg = registry()
        if format == "table":
            return PlainTextResponse(reg.report("table"))
        return reg.report_data()

    @app.get("/info/entropy", response_model=schemas.EntropyOut)
    def info_entropy(rate: float):
        nats, bits = geometric_entropy(rate)
        return schemas.EntropyOut(rate=rate, nats=nats, bits=bits)

    @app.get("/info/kl", response_model=schemas.KlOut)
    def info_kl(p: float, q: float):
        ce_nats, ce_bits = geometric_cross_entropy(p, q)
        kl_nats, kl_bits = geometric_kl(p, q)
        return schemas.KlOut(p_rate=p, q_rate=q,
                             cross_entropy_nats=ce_nats,
                             cross_entropy_bits=ce_bits,
                             kl_nats=kl_nats, kl_bits=kl_bits)

    @app.post("/bounds/required-samples", response_model=schemas.ValueOut)
    def bounds_required(body: schemas.RequiredSamplesIn):
        return _value(required_samples(body.epsilon, body.delta,
                                       _class_spec(body.hypothesis_class)))

    @app.post("/bounds/max-class-size", response_model=schemas.ValueOut)
    def bounds_max_class(body: schemas.MaxClassSizeIn):
        return _value(max_class_log_size(body.n, body.epsilon, body.delta))

    @app.post("/bounds/rule-class-size", response_model=schemas.ValueOut)
    def bounds_rule_class(body: schemas.RuleClassSizeIn):
        return _value(rule_class_log_size(body.thresholds, body.indicators,
                                          body.slots))

    @app.post("/bounds/hidden-worm", response_model=schemas.HiddenWormOut)
    def bounds_hidden_worm(body: schemas.HiddenWormIn):
        spec = _class_spec(body.hypothesis_class)
        analytic = hidden_worm_bound(spec, body.epsilon, body.n)
        out = schemas.HiddenWormOut(analytic=_value(analytic))
        if body.trials is not None:
            if spec.exact_size is None:
                raise HTTPException(
                    422, detail="simulation needs an exact class size")
            out.empirical_frequency = simulate_hidden_worm(
                spec.exact_size, body.epsilon, body.n, body.trials, body.seed)
            out.trials = body.trials
            out.seed = body.seed
        return out

    @app.post("/bounds/compression", response_model=schemas.ValueOut)
    def bounds_compression(body: schemas.CompressionBoundIn):
        return _value(compression_generalization_bound(
            body.bits_per_sample, body.n, body.delta))

    return app
