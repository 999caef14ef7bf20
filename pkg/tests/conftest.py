"""Shared fixtures: a tiny gazetteer, suffix tables and title triggers."""

from __future__ import annotations

from datetime import datetime, timezone

import pytest

from newsmill.corpus import Document, tokenize
from newsmill.extract import ReferenceModel
from newsmill.lexicon import (
    Lexicon, SuffixTable, TitleLexicon, load_gazetteer,
)

FIXTURE_GAZETTEER = """\
1\tplace\tParis\t\tpl\t48.8566\t2.3522\tFR\t2148000
2\tplace\tParis\t\tpl\t33.6609\t-95.5555\tUS\t24000
3\tplace\tTexas\t\tpl\t31.0\t-99.0\tUS\t29000000
4\tplace\tLondon\tLondres\tpl\t51.5074\t-0.1278\tGB\t8900000
5\tplace\tNew York\t\tpl\t40.7128\t-74.006\tUS\t8400000
6\tplace\tFrance\t\tpl\t46.0\t2.0\tFR\t67000000
7\tperson\tVictoria\t\t\t\t\t\t
8\tplace\tVictoria\t\tpl\t48.4284\t-123.3656\tCA\t85000
9\tperson\tGeorge Bush\t\t\t\t\t\t
10\tperson\tMichael Schumacher\t\t\t\t\t\t
11\torganisation\tUnited Nations\tUN\t\t\t\t\t
12\tterm\tnuclear\t\t\t\t\t\t
13\tterm\tweapons of mass destruction\t\t\t\t\t\t
14\tterm\tmissile\t\t\t\t\t\t
"""

ESTONIAN_SUFFIX_RULES = [
    ("pl", 0, "i"),
    ("pl", 0, "it"),
    ("pl", 0, "ile"),
    ("pl", 0, "is"),
    ("pl", 1, "gi"),
    ("pl", 1, "git"),
    ("pl", 1, "gile"),
]


@pytest.fixture()
def gazetteer_path(tmp_path):
    path = tmp_path / "gazetteer.tsv"
    path.write_text(FIXTURE_GAZETTEER, encoding="utf-8")
    return path


@pytest.fixture()
def entries(gazetteer_path):
    return load_gazetteer(str(gazetteer_path))


@pytest.fixture()
def suffixes():
    table = SuffixTable()
    for cls, strip, append in ESTONIAN_SUFFIX_RULES:
        table.add("et", cls, strip, append)
    return table


@pytest.fixture()
def titles():
    lex = TitleLexicon()
    lex.pre["en"] = {"president", "prime minister", "queen", "driver"}
    lex.post["en"] = {"former president", "president"}
    lex.modifiers["en"] = {"former", "yugoslav", "iraqi", "interim"}
    return lex


@pytest.fixture()
def lexicon(entries, suffixes, titles):
    return Lexicon(entries, suffixes, ["en", "et"], titles)


def make_doc(doc_id="d1", language="en", title="Title", body="", date="2005-04-25",
             source="wire", url="http://example.org/a"):
    return Document(
        doc_id=doc_id, language=language, source=source, url=url,
        title=title, body=body,
        published_at=datetime.fromisoformat(f"{date}T06:00:00+00:00").astimezone(timezone.utc),
    )


def make_tdoc(title="Title", body="", **kwargs):
    return tokenize(make_doc(title=title, body=body, **kwargs))


@pytest.fixture()
def english_reference():
    """Small but realistic reference: function words frequent, topics rare."""
    words = {
        "the": 5000, "of": 3000, "and": 2500, "to": 2400, "a": 2300, "in": 2200,
        "said": 800, "on": 700, "for": 650, "with": 600, "was": 550, "at": 500,
        "government": 90, "country": 80, "city": 75, "people": 120, "year": 110,
        "talks": 40, "police": 35, "market": 30, "nuclear": 6, "election": 12,
        "race": 9, "pope": 3, "minister": 45, "president": 60,
    }
    total = sum(words.values()) + 40000  # unlisted long-tail mass
    return ReferenceModel(
        language="en", word_counts=words, total_tokens=total, doc_count=400,
        country_counts={"FR": 60, "US": 150, "GB": 80, "KP": 4, "IT": 30},
        stopword_top_n=12,
    )


@pytest.fixture(scope="session")
def e2e_run(tmp_path_factory):
    """One full fixture-corpus pipeline run shared by store/API/pipeline tests."""
    import e2e

    workdir = tmp_path_factory.mktemp("e2e")
    config, reports, files = e2e.full_run(workdir)
    return config, reports, files


pytest_plugins: list[str] = []
