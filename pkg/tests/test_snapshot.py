"""Snapshot export, schema validation, and the import round-trip."""

import json
from pathlib import Path

import pytest

from newsmill.snapshot import export_snapshot, import_snapshot, validate_snapshot_xml
from newsmill.store import NotFoundError, Store

import e2e


class TestExport:
    def test_files_written(self, e2e_run, tmp_path):
        config, _, _ = e2e_run
        with Store(config.store_path) as store:
            files = export_snapshot(store, "2005-04-25", tmp_path)
        names = sorted(Path(f).name for f in files)
        assert names == [
            "clusters-2005-04-25.json", "clusters-2005-04-25.xml",
            "entities-2005-04-25.json", "entities-2005-04-25.xml",
            "links-2005-04-25.json", "links-2005-04-25.xml",
        ]

    def test_missing_batch_not_found(self, e2e_run, tmp_path):
        config, _, _ = e2e_run
        with Store(config.store_path) as store:
            with pytest.raises(NotFoundError):
                export_snapshot(store, "1999-01-01", tmp_path)

    def test_xml_validates_against_schema(self, e2e_run, tmp_path):
        config, _, _ = e2e_run
        with Store(config.store_path) as store:
            files = export_snapshot(store, "2005-04-26", tmp_path)
        for f in files:
            if f.endswith(".xml"):
                validate_snapshot_xml(f)

    def test_validator_rejects_broken_documents(self, tmp_path):
        bad = tmp_path / "bad.xml"
        bad.write_text('<wrong kind="clusters" date="d" version="1"/>', encoding="utf-8")
        with pytest.raises(ValueError, match="root element"):
            validate_snapshot_xml(bad)
        bad.write_text(
            '<newsmill-snapshot kind="links" date="d" version="1">'
            '<link from="a" to="b" kind="sideways" score="0.5"/></newsmill-snapshot>',
            encoding="utf-8",
        )
        with pytest.raises(ValueError, match="bad link kind"):
            validate_snapshot_xml(bad)

    def test_empty_day_valid_documents(self, tmp_path):
        # a batch with documents but no qualifying topics still exports
        from newsmill.store import BatchInput
        from conftest import make_doc

        with Store(str(tmp_path / "s.db")) as store:
            doc = make_doc(doc_id="lonely", title="Nothing clusters here")
            store.replace_batch(BatchInput(
                language="en", date="2005-04-25", documents=[doc],
                mentions={}, titles={}, clusters=[],
            ))
            files = export_snapshot(store, "2005-04-25", tmp_path)
        clusters = json.loads((tmp_path / "clusters-2005-04-25.json").read_text())
        assert clusters["clusters"] == []
        for f in files:
            if f.endswith(".xml"):
                validate_snapshot_xml(f)


class TestRoundTrip:
    def test_reimport_reproduces_api_responses(self, e2e_run, tmp_path):
        config, _, files = e2e_run
        fresh_path = str(tmp_path / "fresh.db")
        with Store(config.store_path) as original, Store(fresh_path) as fresh:
            for date in e2e.DATES:
                import_snapshot(fresh, config.snapshot_dir, date)

            for date in e2e.DATES:
                orig_rows = original.cluster_summaries(date, None, limit=1000)
                fresh_rows = fresh.cluster_summaries(date, None, limit=1000)
                assert orig_rows == fresh_rows
                for row in orig_rows:
                    a = original.get_cluster_page(row["cluster_id"])
                    b = fresh.get_cluster_page(row["cluster_id"])
                    assert a == b

            for entity_id, _ in original.entity_canonicals():
                assert original.get_entity_page(entity_id) == fresh.get_entity_page(entity_id)

    def test_reexport_after_import_is_byte_identical(self, e2e_run, tmp_path):
        config, _, _ = e2e_run
        fresh_path = str(tmp_path / "fresh.db")
        out = tmp_path / "again"
        with Store(config.store_path) as original, Store(fresh_path) as fresh:
            for date in e2e.DATES:
                import_snapshot(fresh, config.snapshot_dir, date)
            for date in e2e.DATES:
                export_snapshot(fresh, date, out)
        for original_file in sorted(Path(config.snapshot_dir).glob("*")):
            again = out / original_file.name
            assert again.read_bytes() == original_file.read_bytes(), original_file.name
