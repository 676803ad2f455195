import json

from rea_center.algebra.ncpoly import FRT, REA, NCPoly, parse
from rea_center.algebra.pbw import PBWEngine, normal_form
from rea_center.processors.storage_manager import CacheSession
from rea_center.storage.normal_form_store import NormalFormStore

WORD = ((1, 2), (1, 1))


def test_store_without_directory_does_not_connect(monkeypatch):
    store = NormalFormStore(REA, 2, cache_dir=None)
    monkeypatch.setattr(store, "cache_dir", None)
    assert not store.connect()
    assert store.store_many([]) == 0


def test_engine_flush_and_reload(tmp_path):
    engine = PBWEngine(REA, 2)
    with NormalFormStore(REA, 2, str(tmp_path)) as store:
        engine.attach_store(store)
        terms = engine.reduce_word(WORD)
        assert engine.flush() == 1
        assert engine.flush() == 0
        engine.detach_store()

    reloaded = NormalFormStore(REA, 2, str(tmp_path))
    assert reloaded.connect()
    loaded = reloaded.load_all()
    reloaded.disconnect()
    assert loaded[WORD] == terms

    fresh = PBWEngine(REA, 2)
    with NormalFormStore(REA, 2, str(tmp_path)) as store:
        fresh.attach_store(store)
        assert fresh.cache_size() == 1
        fresh.detach_store()
    expected = parse("a[1,1]*a[1,2] + (1 - q^-2)*a[1,2]*a[2,2]", N=2)
    assert fresh.normal_form(NCPoly.monomial(REA, 2, WORD)) == expected


def test_unreadable_cache_lines_are_skipped(tmp_path):
    path = tmp_path / "nf_REA_N2.jsonl"
    good = {
        "algebra": REA,
        "N": 2,
        "word": [[2, 2], [1, 1]],
        "nf": NCPoly.monomial(REA, 2, ((1, 1), (2, 2))).to_json(),
    }
    other = dict(good, N=3)
    path.write_text("\n".join(["{broken", json.dumps(other), json.dumps(good), ""]), encoding="utf-8")

    store = NormalFormStore(REA, 2, str(tmp_path))
    assert store.connect()
    loaded = store.load_all()
    store.disconnect()
    assert list(loaded) == [((2, 2), (1, 1))]


def test_cache_session_writes_new_normal_forms(tmp_path):
    with CacheSession(str(tmp_path)) as session:
        normal_form(parse("x[2,1]*x[1,1]", N=6))
        assert (FRT, 6) in session.stores
    path = tmp_path / "nf_FRT_N6.jsonl"
    assert path.exists()
    records = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert [[2, 1], [1, 1]] in [r["word"] for r in records]


def test_disabled_cache_session(monkeypatch):
    session = CacheSession()
    monkeypatch.setattr(session, "enabled", False)
    with session:
        pass
    assert session.close() == 0
