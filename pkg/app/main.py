from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
import logging
import time

from .cli import run
from .config import settings
from .errors import CodiffError, InputError, PoleError
from .models import Report, RunRequest
from .presentations import list_builtins

app = FastAPI(title="codiff", version="0.1.0")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=False,
    allow_methods=["*"],
    allow_headers=["*"],
)

logger = logging.getLogger("codiff.api")
if not logger.handlers:
    logging.basicConfig(level=settings.log_level)


@app.get("/health")
def health():
    return {"ok": True}


@app.get("/v1/builtins")
def builtins():
    return {"builtins": list_builtins()}


@app.post("/v1/run", response_model=Report)
def run_command(req: RunRequest, request: Request):
    t0 = time.perf_counter()
    logger.info("RUN start ip=%s command=%s builtin=%s", getattr(request.client, "host", "?"), req.command, req.builtin)
    try:
        report = run(req)
    except (InputError, PoleError) as exc:
        logger.warning("RUN rejected: %s", exc)
        raise HTTPException(400, str(exc))
    except CodiffError as exc:
        logger.warning("RUN failed: %s", exc)
        raise HTTPException(422, str(exc))
    logger.info("RUN done in %.3fs; ok=%s", time.perf_counter() - t0, report.ok)
    return report
