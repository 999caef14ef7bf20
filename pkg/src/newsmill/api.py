"""Read-only JSON API over the store.

All writes flow through the pipeline; the API is a pure function of store
state.  Endpoints: /clusters, /clusters/{id}, /entities/{id}, /search,
/pivot, /stats.  Built explorer assets, when configured, are served under
/ui.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .config import Config
from .search import run_search
from .store import NotFoundError, Store


def create_app(store: Store, config: Config | None = None) -> FastAPI:
    config = config or Config()
    app = FastAPI(title="newsmill", version="1.0", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.get("/stats")
    def stats() -> dict:
        data = store.stats()
        data["settings"] = {
            "topic_threshold": config.topic_threshold,
            "min_cluster_size": config.min_cluster_size,
            "name_threshold": config.name_threshold,
            "temporal_threshold": config.temporal_threshold,
            "crosslingual_threshold": config.crosslingual_threshold,
            "crosslingual_weights": list(config.crosslingual_weights),
            "window_days": config.window_days,
            "max_links_per_day": config.max_links_per_day,
            "top_k_keywords": config.top_k_keywords,
            "country_weight": config.country_weight,
            "search_threshold": config.search_threshold,
        }
        return data

    @app.get("/clusters")
    def clusters(
        date: str | None = None,
        lang: str | None = None,
        limit: int = Query(default=50, ge=1, le=1000),
        offset: int = Query(default=0, ge=0),
    ) -> dict:
        return {
            "clusters": store.cluster_summaries(date, lang, limit=limit, offset=offset),
            "limit": limit,
            "offset": offset,
        }

    @app.get("/clusters/{cluster_id}")
    def cluster_page(cluster_id: str) -> dict:
        try:
            return store.get_cluster_page(cluster_id)
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/entities/{entity_id}")
    def entity_page(entity_id: int) -> dict:
        try:
            return store.get_entity_page(entity_id)
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/search")
    def search(q: str = Query(min_length=1)) -> dict:
        return run_search(store, q, config.search_threshold)

    @app.get("/pivot")
    def pivot(
        type: str = Query(pattern="^(keyword|place|country)$"),
        key: str = Query(min_length=1),
        lang: str | None = None,
        limit: int = Query(default=50, ge=1, le=1000),
        offset: int = Query(default=0, ge=0),
    ) -> dict:
        if type == "keyword":
            if not lang:
                raise HTTPException(
                    status_code=400, detail="keyword pivots are language-bound; pass lang="
                )
            rows = store.pivot_keyword(key.lower(), lang, limit=limit, offset=offset)
        elif type == "place":
            try:
                entry_id = int(key)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail="place pivot key must be an entry id") from exc
            rows = store.pivot_place(entry_id, limit=limit, offset=offset)
        else:
            rows = store.pivot_country(key.upper(), limit=limit, offset=offset)
        return {"type": type, "key": key, "lang": lang, "clusters": rows}

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
