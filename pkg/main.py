# main.py
from __future__ import annotations

import logging
from dataclasses import asdict
from datetime import datetime
from typing import Any, Callable, Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from peano_trees import __version__
from peano_trees.cache import digest, get as cache_get, make_key, set as cache_set
from peano_trees.config import (
    ACTION_SEARCH_BOUND,
    ARTIFACT_CACHE_TTL_SECONDS,
    DEBUG,
    DEFAULT_GRID,
    DEFAULT_METRIC,
    DEFAULT_VERIFY,
    validate_config,
)
from peano_trees.continuum import parse_automorphism, parse_graph
from peano_trees.corpus import automorphism_names, graph_names, load_entry
from peano_trees.models import GraphContinuum, HasCutPointsError, InputError, InvariantViolation, PreconditionError
from peano_trees.pipeline import (
    Artifact,
    RunConfig,
    action_artifact,
    cmd_verify,
    combined_artifact,
    cutpoint_artifact,
    jsj_artifact,
)

logger = logging.getLogger(__name__)

# -----------------------
# App
# -----------------------
app = FastAPI(
    title="Peano Trees API",
    version=__version__,
    description="Cut-point, cut-pair and combined trees of finite graphs, and induced tree actions",
)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=False,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.on_event("startup")
def on_startup():
    logging.basicConfig(level=logging.DEBUG if DEBUG else logging.INFO)
    validate_config()


@app.get("/health")
def health_check():
    return {"status": "ok", "time": datetime.utcnow().isoformat() + "Z"}


# -----------------------
# Request models
# -----------------------
class TreeRequest(BaseModel):
    graph: str = Field(..., description="Edge-list text: 'v <id>' and 'e <id> <u> <v> [length]' lines")
    name: str = ""
    grid: int = Field(DEFAULT_GRID, ge=1)
    metric: Literal["canonical", "geometric"] = DEFAULT_METRIC
    seed: Optional[str] = None
    format: Literal["dot", "text"] = "text"
    verify: Literal["off", "lemmas", "full"] = DEFAULT_VERIFY


class ActionRequest(TreeRequest):
    automorphism: str = Field(..., description="Automorphism text: 'pv' and 'pe' lines")
    automorphism_name: str = ""
    tree: Literal["cutpoint", "jsj", "combined"] = "cutpoint"
    bound: int = Field(ACTION_SEARCH_BOUND, ge=1)


# -----------------------
# Helpers
# -----------------------
def _config(command: str, req: TreeRequest, **extra) -> RunConfig:
    return RunConfig(
        command=command,
        graph=req.name or "request",
        grid=req.grid,
        metric=req.metric,
        seed=req.seed,
        format=req.format,
        verify=req.verify,
        **extra,
    )


def _response(command: str, req: TreeRequest, artifact: Artifact, cached: bool) -> Dict[str, Any]:
    tree = artifact.tree
    return {
        "command": command,
        "format": "text" if command == "action" else req.format,
        "artifact": artifact.text,
        "nodes": len(tree.nodes) if tree else 0,
        "arcs": len(tree.arcs) if tree else 0,
        "properties": [asdict(r) for r in artifact.results],
        "ok": not artifact.failures,
        "cached": cached,
    }


def _serve(command: str, req: TreeRequest, build: Callable[[], Artifact]) -> Dict[str, Any]:
    """Cache-first build; library errors map to 400 / 409 / 500."""
    key = make_key(command, digest(req.model_dump_json()))
    cached = cache_get(key)
    if cached is not None:
        return _response(command, req, cached, cached=True)

    try:
        artifact = build()
    except HasCutPointsError as e:
        raise HTTPException(status_code=409, detail=f"{e}; use /api/combined instead")
    except PreconditionError as e:
        raise HTTPException(status_code=409, detail=str(e))
    except InputError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except InvariantViolation as e:
        logger.error("%s: invariant violated: %s", command, e)
        raise HTTPException(status_code=500, detail=f"invariant violated: {e}")

    cache_set(key, artifact, ttl_seconds=ARTIFACT_CACHE_TTL_SECONDS)
    return _response(command, req, artifact, cached=False)


def _graph(req: TreeRequest) -> GraphContinuum:
    return parse_graph(req.graph, name=req.name)


# -----------------------
# Corpus
# -----------------------
@app.get("/api/corpus")
def list_corpus():
    return {
        "graphs": [
            {"name": name, "automorphisms": automorphism_names(name)}
            for name in graph_names()
        ]
    }


@app.get("/api/corpus/{name}")
def get_corpus_graph(name: str):
    try:
        entry = load_entry(name)
    except InputError as e:
        raise HTTPException(status_code=404, detail=str(e))
    return {
        "name": entry.name,
        "graph": entry.text,
        "automorphisms": [g.name for g in entry.automorphisms],
    }


# -----------------------
# Trees
# -----------------------
@app.post("/api/cutpoint-tree")
def cutpoint_tree(req: TreeRequest):
    return _serve("cutpoint-tree", req, lambda: cutpoint_artifact(_graph(req), _config("cutpoint-tree", req)))


@app.post("/api/jsj-tree")
def jsj_tree(req: TreeRequest):
    return _serve("jsj-tree", req, lambda: jsj_artifact(_graph(req), _config("jsj-tree", req)))


@app.post("/api/combined")
def combined_tree(req: TreeRequest):
    return _serve("combined", req, lambda: combined_artifact(_graph(req), _config("combined", req)))


@app.post("/api/action")
def tree_action(req: ActionRequest):
    def build() -> Artifact:
        X = _graph(req)
        g = parse_automorphism(req.automorphism, X, name=req.automorphism_name)
        return action_artifact(X, g, _config("action", req, tree=req.tree, bound=req.bound))

    return _serve("action", req, build)


# -----------------------
# Verification
# -----------------------
@app.get("/api/verify")
def verify_corpus(grid: int = DEFAULT_GRID, bound: int = ACTION_SEARCH_BOUND):
    if grid < 1 or bound < 1:
        raise HTTPException(status_code=400, detail="grid and bound must be >= 1")

    key = make_key("verify", f"{grid}:{bound}")
    cached = cache_get(key)
    if cached is None:
        frame, results = cmd_verify(grid, bound)
        failed: List[Dict[str, Any]] = [asdict(r) for r in results if r.failed]
        cached = {"matrix": frame.to_dict(orient="index"), "failures": failed}
        cache_set(key, cached, ttl_seconds=ARTIFACT_CACHE_TTL_SECONDS)

    return {"grid": grid, "bound": bound, "ok": not cached["failures"], **cached}
