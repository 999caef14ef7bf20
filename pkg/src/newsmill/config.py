"""Run configuration: thresholds, weights and data paths.

The config file is plain ``key = value`` lines; '#' starts a comment.
Lists are comma-separated.  Relative paths resolve against the config
file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path


@dataclass
class Config:
    languages: list[str] = field(default_factory=lambda: ["en"])

    # paths
    data_dir: str = "data"
    docs_dir: str = "data/docs"
    store_path: str = "data/newsmill.db"
    gazetteer_path: str = "data/gazetteer.tsv"
    suffix_dir: str = "data/suffixes"
    titles_dir: str = "data/titles"
    reference_dir: str = "data/reference"
    profiles_path: str = "data/eurovoc_profiles.tsv"
    overrides_path: str = ""
    snapshot_dir: str = "data/snapshots"
    static_dir: str = ""

    # thresholds and weights
    topic_threshold: float = 0.5
    min_cluster_size: int = 2
    name_threshold: float = 0.7
    temporal_threshold: float = 0.5
    crosslingual_threshold: float = 0.3
    window_days: int = 7
    max_links_per_day: int = 1
    top_k_keywords: int = 100
    country_weight: float = 1.0
    stopword_top_n: int = 200
    search_threshold: float = 0.5
    descriptor_limit: int = 100
    crosslingual_weight_descriptors: float = 0.7
    crosslingual_weight_countries: float = 0.2
    crosslingual_weight_keywords: float = 0.1

    @property
    def crosslingual_weights(self) -> tuple[float, float, float]:
        return (
            self.crosslingual_weight_descriptors,
            self.crosslingual_weight_countries,
            self.crosslingual_weight_keywords,
        )

    def suffix_paths(self) -> dict[str, str]:
        base = Path(self.suffix_dir)
        if not base.is_dir():
            return {}
        return {p.stem: str(p) for p in sorted(base.glob("*.tsv"))}

    def title_paths(self) -> dict[str, str]:
        base = Path(self.titles_dir)
        if not base.is_dir():
            return {}
        return {p.stem: str(p) for p in sorted(base.glob("*.tsv"))}

    def reference_path(self, language: str) -> str:
        return str(Path(self.reference_dir) / f"{language}.tsv")


_PATH_KEYS = {
    "data_dir", "docs_dir", "store_path", "gazetteer_path", "suffix_dir",
    "titles_dir", "reference_dir", "profiles_path", "overrides_path",
    "snapshot_dir", "static_dir",
}


def load_config(path) -> Config:
    path = Path(path)
    values: dict[str, object] = {}
    typed = {f.name: f.type for f in fields(Config)}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in typed:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = _coerce(key, value, typed[key])
    cfg = Config(**values)
    base = path.parent
    for key in _PATH_KEYS:
        current = getattr(cfg, key)
        if current and not Path(current).is_absolute():
            setattr(cfg, key, str(base / current))
    return cfg


def _coerce(key: str, value: str, type_hint: str):
    if key == "languages":
        return [v.strip() for v in value.split(",") if v.strip()]
    if "int" in str(type_hint):
        return int(value)
    if "float" in str(type_hint):
        return float(value)
    return value
