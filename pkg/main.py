import hashlib
import json
import uuid
from datetime import datetime

from fastapi import (
    BackgroundTasks,
    Depends,
    FastAPI,
    HTTPException,
    Request,
    Response,
)
from fastapi.middleware.cors import CORSMiddleware

from models.decision import (
    Decision,
    EquationRequest,
    IdentityRequest,
    IdentityResponse,
    NormalizeResponse,
    TermRequest,
)
from models.reports import RegistryReport
from models.run_config import RunConfig
from models.search_task import (
    TASKS,
    SearchRequest,
    SearchTaskResponse,
    SearchTaskStatus,
    TaskState,
    process_search,
)
from services.claims import run_claim_registry
from services.decider import decide
from services.errors import WeakIndError
from services.induction_lab import parse_shape
from services.model_zoo import model_ops
from services.parser import parse_equation, parse_term
from services.polynorm import decide_identity, normalize, vandermonde_oracle
from utils.settings import get_run_config

app = FastAPI(
    title="WeakInd Service",
    version="1.0.0",
    description="Decision procedures and countermodel checks for weak fragments of open induction",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# -----------------------------------------------------------------------------
# Helper functions
# -----------------------------------------------------------------------------
def compute_etag(payload: dict) -> str:
    """Weak ETag over the canonical JSON of a payload."""
    body = json.dumps(payload, sort_keys=True, default=str).encode("utf-8")
    md5_hex = hashlib.md5(body).hexdigest()
    return f'W/"{md5_hex}"'


def bad_request(exc: WeakIndError) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))

# -----------------------------------------------------------------------------
# POST /decide, /normalize, /identity
# -----------------------------------------------------------------------------
@app.post("/decide", response_model=Decision)
def decide_equation(payload: EquationRequest):
    try:
        s, t = parse_equation(payload.equation)
    except WeakIndError as exc:
        raise bad_request(exc)
    return decide(s, t)


@app.post("/normalize", response_model=NormalizeResponse)
def normalize_term(payload: TermRequest):
    try:
        poly = normalize(parse_term(payload.term))
    except WeakIndError as exc:
        raise bad_request(exc)
    return NormalizeResponse(polynomial=poly.render(), degree=poly.degree())


@app.post("/identity", response_model=IdentityResponse)
def identity(payload: IdentityRequest):
    try:
        s, t = parse_term(payload.left), parse_term(payload.right)
    except WeakIndError as exc:
        raise bad_request(exc)
    return IdentityResponse(identity=decide_identity(s, t), oracle=vandermonde_oracle(s, t))

# -----------------------------------------------------------------------------
# GET /claims  (ETag + If-None-Match => 304)
# -----------------------------------------------------------------------------
@app.get(
    "/claims",
    response_model=RegistryReport,
    responses={304: {"description": "Not Modified"}},
)
def get_claims(
    request: Request,
    response: Response,
    config: RunConfig = Depends(get_run_config),
):
    report = run_claim_registry(probe_bound=config.probe_bound, seed=config.seed)
    etag = compute_etag(report.model_dump(mode="json"))

    response.headers["ETag"] = etag

    inm = request.headers.get("if-none-match")
    if inm and inm.strip() == etag:
        return Response(status_code=304, headers={"ETag": etag})

    return report

# -----------------------------------------------------------------------------
# POST /search  (202 Accepted + background task)
# -----------------------------------------------------------------------------
@app.post("/search", response_model=SearchTaskResponse, status_code=202)
async def start_search(
    payload: SearchRequest,
    background_tasks: BackgroundTasks,
    config: RunConfig = Depends(get_run_config),
):
    """Run a randomized violation search asynchronously."""
    try:
        model_ops(payload.model)
        parse_shape(payload.shape)
    except (WeakIndError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))

    budget = config.budget if payload.budget is None else payload.budget
    seed = config.seed if payload.seed is None else payload.seed
    task_id = str(uuid.uuid4())

    task_status = SearchTaskStatus(
        task_id=task_id,
        status=TaskState.PENDING,
        message=f"Search of {budget} trials on {payload.model} queued",
        created_at=datetime.now(),
    )
    TASKS.put(task_status)

    background_tasks.add_task(process_search, TASKS, task_id, payload, budget, seed, config.workers)

    return SearchTaskResponse(
        task_id=task_id,
        status=TaskState.PENDING,
        message=f"Search started. Use GET /search/task/{task_id} to check progress.",
    )


@app.get("/search/task/{task_id}", response_model=SearchTaskStatus)
def get_search_task_status(task_id: str):
    """Check the status of a search task."""
    task = TASKS.get(task_id)
    if not task:
        raise HTTPException(status_code=404, detail="Search task not found")
    return task

# -----------------------------------------------------------------------------
# Root
# -----------------------------------------------------------------------------
@app.get("/")
def root():
    return {"message": "WeakInd Service"}

if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host="0.0.0.0", port=8080, reload=True)
