"""Canonical JSON bytes and the on-disk Smith-form cache."""

import json

import pytest

from petring.cache import JsonCache, default_cache_dir, make_key
from petring.serialize import canonical_json_bytes, stringify_ints


def test_ints_become_decimal_strings():
    assert stringify_ints({"a": 5, "b": [1, -2], "c": True}) == \
        {"a": "5", "b": ["1", "-2"], "c": True}
    assert stringify_ints(10 ** 30) == str(10 ** 30)
    assert stringify_ints(None) is None


def test_floats_rejected():
    with pytest.raises(TypeError):
        stringify_ints(1.5)
    with pytest.raises(TypeError):
        canonical_json_bytes({"x": [1.0]})


def test_non_string_keys_rejected():
    with pytest.raises(TypeError):
        stringify_ints({1: "a"})


def test_canonical_bytes_are_sorted_and_newline_terminated():
    data = canonical_json_bytes({"b": 1, "a": 2})
    assert data == b'{"a":"2","b":"1"}\n'
    assert canonical_json_bytes([3, True]) == b'["3",true]\n'


def test_make_key_is_stable_and_hex():
    k1 = make_key("scheme", 3, 2)
    k2 = make_key("scheme", 3, 2)
    assert k1 == k2 and len(k1) == 64
    assert k1 != make_key("scheme", 3, 3)


def test_cache_round_trip(tmp_path):
    cache = JsonCache(tmp_path)
    key = make_key("t", 1)
    assert cache.get(key) is None
    cache.put(key, {"x": [1, 2]})
    assert cache.get(key) == {"x": ["1", "2"]}
    # overwrite is atomic and wins
    cache.put(key, {"x": []})
    assert cache.get(key) == {"x": []}
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_rejects_bad_keys(tmp_path):
    cache = JsonCache(tmp_path)
    with pytest.raises(ValueError):
        cache.get("../../etc/passwd")
    with pytest.raises(ValueError):
        cache.put("short", {})


def test_corrupt_entry_is_a_miss(tmp_path):
    cache = JsonCache(tmp_path)
    key = make_key("x")
    (tmp_path / f"{key}.json").write_text("{not json")
    assert cache.get(key) is None


def test_default_cache_dir_resolution(monkeypatch, tmp_path):
    monkeypatch.delenv("PETRING_CACHE_DIR", raising=False)
    assert str(default_cache_dir()) == ".petring_cache"
    monkeypatch.setenv("PETRING_CACHE_DIR", str(tmp_path / "env"))
    assert default_cache_dir() == tmp_path / "env"
    # an explicit argument beats the environment
    assert default_cache_dir(str(tmp_path / "arg")) == tmp_path / "arg"


def test_cache_files_are_valid_json(tmp_path):
    cache = JsonCache(tmp_path)
    key = make_key("y")
    cache.put(key, [1, {"k": -2}])
    raw = (tmp_path / f"{key}.json").read_bytes()
    assert raw.endswith(b"\n")
    assert json.loads(raw) == ["1", {"k": "-2"}]
