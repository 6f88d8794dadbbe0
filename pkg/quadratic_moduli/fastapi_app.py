import logging

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.security import HTTPAuthorizationCredentials, HTTPBearer
from pydantic import BaseModel, Field

from quadratic_moduli import env
from quadratic_moduli.cli import (
    classify_cycle_payload,
    classify_fixed_payload,
    conjugate_payload,
    density_witness_payload,
    invariants_payload,
    reduce_payload,
    sunit_solve_payload,
)
from quadratic_moduli.errors import ModuliError
from quadratic_moduli.tracing import setup_tracing
from quadratic_moduli.utils import parse_map, parse_mobius, parse_point, parse_prime_set

logger = logging.getLogger(__name__)

# Standard auth scheme using -H "Authorization: Bearer <api_key>" header.
# auto_error=False so the API stays open when QM_API_KEY is unset.
security = HTTPBearer(auto_error=False)


def validate_api_key(credentials: HTTPAuthorizationCredentials | None = Depends(security)):
    if env.API_KEY is None:
        return None
    if credentials is None or credentials.credentials != env.API_KEY:
        raise HTTPException(status_code=401, detail="Invalid user API key")
    return credentials.credentials


# Request models
class MapRequest(BaseModel):
    map: str = Field(description='"a0,a1,a2;b0,b1,b2"')


class ConjugateRequest(MapRequest):
    mobius: str = Field(description='"alpha,beta;gamma,delta"')


class ReduceRequest(MapRequest):
    prime: int


class TripleRequest(MapRequest):
    p1: str = Field(description='"x:y"')
    p2: str = Field(description='"x:y"')
    S: str = Field(default="", description="primes allowed to be bad, e.g. '2,3'")


class DensityWitnessRequest(BaseModel):
    p: int
    N: int


class SunitSolveRequest(BaseModel):
    S: str = ""
    bound: int = Field(default=env.DEFAULT_EQ_BOUND, ge=0)


# Using `dependencies` to apply the API key validation to all endpoints.
app = FastAPI(title="quadratic-moduli", dependencies=[Depends(validate_api_key)])


@app.exception_handler(ModuliError)
async def moduli_error_handler(request: Request, error: ModuliError):
    logger.info("%s rejected: %s", request.url.path, error)
    return JSONResponse(status_code=422, content={"detail": str(error)})


@app.post("/api/v1/invariants")
async def invariants_endpoint(request: MapRequest):
    return invariants_payload(parse_map(request.map))


@app.post("/api/v1/conjugate")
async def conjugate_endpoint(request: ConjugateRequest):
    return conjugate_payload(parse_map(request.map), parse_mobius(request.mobius))


@app.post("/api/v1/reduce")
async def reduce_endpoint(request: ReduceRequest):
    return reduce_payload(parse_map(request.map), request.prime)


@app.post("/api/v1/classify_fixed")
async def classify_fixed_endpoint(request: TripleRequest):
    return classify_fixed_payload(
        parse_map(request.map), parse_point(request.p1), parse_point(request.p2), parse_prime_set(request.S)
    )


@app.post("/api/v1/classify_cycle")
async def classify_cycle_endpoint(request: TripleRequest):
    return classify_cycle_payload(
        parse_map(request.map), parse_point(request.p1), parse_point(request.p2), parse_prime_set(request.S)
    )


@app.post("/api/v1/density_witness")
async def density_witness_endpoint(request: DensityWitnessRequest):
    return density_witness_payload(request.p, request.N)


@app.post("/api/v1/sunit_solve")
async def sunit_solve_endpoint(request: SunitSolveRequest):
    return sunit_solve_payload(parse_prime_set(request.S), request.bound)


@app.get("/api/v1/health")
async def health_check():
    return {"status": "ok"}


def main():
    import uvicorn

    logging.basicConfig(level=env.LOG_LEVEL)
    if env.TRACE_ENDPOINT:
        setup_tracing(env.TRACE_ENDPOINT)
    uvicorn.run(
        "quadratic_moduli.fastapi_app:app", host=env.API_HOST, port=env.API_PORT, log_level=env.LOG_LEVEL.lower()
    )


if __name__ == "__main__":
    main()
