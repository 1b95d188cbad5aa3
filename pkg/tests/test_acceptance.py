"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its runtime; the same lines
are repeated in the terminal summary at the end of the pytest run.
"""

import contextlib
import itertools
import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

from lmfkit import (
    canonicalize,
    check_acyclic,
    cognates_of,
    ety_chain,
    parse_document,
    serialize_document,
)
from lmfkit.store import Store, export_json, ingest, lookup

from conftest import ACCEPTANCE_RESULTS, CORPUS, FIXTURES
from gen import random_chain_case, random_graph_case, random_resource
from mutations import MUTATIONS, apply, copy_corpus, outcome
from oracles import chain_oracle, cycle_oracle, lookup_scan, reported_cycles

SRC = Path(__file__).resolve().parent.parent / "src"


@contextlib.contextmanager
def criterion(number, title, budget=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"[{number}] FAIL {title} ({elapsed:.2f}s): {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        ACCEPTANCE_RESULTS.append(line)
        print(line)
        raise
    line = f"[{number}] PASS {title} ({elapsed:.2f}s)"
    ACCEPTANCE_RESULTS.append(line)
    print(line)


# criterion 1


def form_digest(form):
    return {
        "class": form.form_class,
        "id": form.id,
        "reps": [(r.orthography, r.pronunciation) for r in form.representations],
        "features": [(g.name, g.value) for g in form.grammatical_features],
        "usages": [(u.usage_type, u.value) for u in form.usages],
        "nested": [form_digest(f) for f in form.nested_forms],
        "segments": [(s.surface, s.order, s.corresp) for s in form.segments],
    }


def entry_digest(entry):
    return {
        "forms": [form_digest(f) for f in entry.forms],
        "senses": [
            {
                "definitions": [t.text for t in s.definitions],
                "examples": [t.text for t in s.examples],
                "features": [(g.name, g.value) for g in s.grammatical_features],
                "subsenses": len(s.subsenses),
            }
            for s in entry.senses
        ],
        "related": [(r.re_type, entry_digest(r)) for r in entry.related],
        "etymology": entry.etymology,
    }


def bare(cls, ortho, pron=None, features=(), usages=(), nested=(), segments=(), id=None):
    return {
        "class": cls, "id": id, "reps": [(ortho, pron)] if ortho is not None else [],
        "features": list(features), "usages": list(usages),
        "nested": list(nested), "segments": list(segments),
    }


CENTER_GOLDEN = {
    "forms": [
        bare("lemma", "center", "'sentʃ", [("pos", "noun")], [("geo", "U.S")], id="center_form", nested=[
            bare("variant", "centre", "'sentə", usages=[("geo", "U.K")]),
        ]),
        bare("inflected", "centers", features=[("number", "plural")], usages=[("geo", "U.S")]),
        bare("inflected", "centres", features=[("number", "plural")], usages=[("geo", "U.K")]),
    ],
    "senses": [
        {
            "definitions": ["the point around which a circle or sphere is described"],
            "examples": ["earth center"], "features": [], "subsenses": 0,
        },
        {
            "definitions": ["place in the middle"],
            "examples": ["center the picture on the wall"], "features": [("pos", "verb")], "subsenses": 0,
        },
    ],
    "related": [("multiWordExpression", {
        "forms": [bare(None, None, segments=[("dead", 1, "dead_form"), ("center", 2, "center_form")])],
        "senses": [], "related": [], "etymology": None,
    })],
    "etymology": None,
}


def test_criterion_1_center_golden_parse():
    with criterion(1, "center entry golden parse", budget=1.0):
        data = (FIXTURES / "center.xml").read_bytes()
        parsed = parse_document(data, filename="center.xml", external_ids=["dead_form"])
        assert parsed.ok, parsed.diagnostics
        (lexicon,) = parsed.value.lexicons
        (entry,) = lexicon.entries
        assert entry_digest(entry) == CENTER_GOLDEN
        out = serialize_document(parsed.value, root=parsed.root)
        assert b'<seg corresp="#dead_form" n="1">dead</seg>' in out
        assert b'<seg corresp="#center_form" n="2">center</seg>' in out


# criterion 2


def test_criterion_2_center_etymology():
    with criterion(2, "center etymology chain and cognates", budget=1.0):
        parsed = parse_document((FIXTURES / "center-etym.xml").read_bytes(), filename="center-etym.xml")
        assert parsed.ok, parsed.diagnostics
        res = parsed.value
        chain = ety_chain(res, "center")
        assert [(e.headword, e.language) for _, e in chain] == [
            ("centre", "fr"), ("centrum", "la"), ("κέντρον", "grc"),
        ]
        found = {(e.headword, e.language) for e in cognates_of(res, "center")}
        assert {("kentr", "bre"), ("cinteir", "sga"), ("hantag", "goh"), ("cethr", "cym")} <= found


# criterion 3


def ety_depth(ety):
    """Nesting depth: 0 for an etymology without sub-etymologies."""
    return 1 + max((ety_depth(s) for s in ety.sub_etymologies), default=-1)


def test_criterion_3_roundtrip_1000_entries():
    with criterion(3, "parse(serialize(V)) = V on >=1000 generated entries", budget=60.0):
        rnd = random.Random(20240603)
        entries = failures = 0
        nested = mwes = 0
        depths = set()
        while entries < 1000:
            res = random_resource(rnd, rnd.randint(1, 12))
            parsed = parse_document(serialize_document(res))
            if not (parsed.ok and parsed.value == res):
                failures += 1
            for _, e in res.iter_entries():
                entries += 1
                nested += any(f.nested_forms for f in e.forms)
                mwes += e.is_mwe
                if e.etymology is not None:
                    depths.add(ety_depth(e.etymology))
        assert failures == 0, f"{failures} round-trip failure(s)"
        assert nested and mwes and 3 in depths, (nested, mwes, depths)


# criterion 4


def test_criterion_4_weak_inverse():
    with criterion(4, "serialize(parse(D)) = canonicalize(D) on all fixtures"):
        store, _ = ingest(CORPUS)
        known = tuple(store.resource.id_index)
        assert len(CORPUS) >= 4
        for path in CORPUS:
            data = path.read_bytes()
            canon = canonicalize(data)
            assert canonicalize(canon) == canon, f"{path.name}: canonicalize not idempotent"
            parsed = parse_document(data, filename=path.name, external_ids=known)
            assert parsed.ok, parsed.diagnostics
            assert serialize_document(parsed.value, root=parsed.root) == canon, path.name


# criterion 5


def test_criterion_5_fault_injection(tmp_path):
    with criterion(5, f"{len(MUTATIONS)} seeded faults each give the expected diagnostic"):
        assert len(MUTATIONS) >= 25
        _, clean = ingest(copy_corpus(_mkdir(tmp_path / "clean")))
        assert clean.diagnostics == (), clean.render_text()
        wrong = []
        for m in MUTATIONS:
            where = tmp_path / m.name
            where.mkdir()
            report, (file, line, col) = apply(m, where)
            if outcome(report) != [(m.code, file, line, col)]:
                wrong.append(f"{m.name}: {report.render_text()!r}")
        assert not wrong, "; ".join(wrong)


# criterion 6


def test_criterion_6_oracle_equivalence():
    with criterion(6, "chain, cycle and lookup oracles agree on >=500 cases each"):
        rnd = random.Random(77)
        disagree = 0
        for _ in range(500):
            steps = rnd.randint(1, 8)
            res, raw = random_chain_case(rnd, steps=steps, n=steps + rnd.randint(2, 6))
            paths = chain_oracle(raw)
            got = [(t, e.id) for t, e in ety_chain(res, "e0")]
            disagree += len(paths) != 1 or got != paths[0]
        for _ in range(500):
            n = rnd.randint(25, 60)
            planted = rnd.randint(0, 5)
            res, raw = random_graph_case(rnd, n=n, edges=rnd.randint(0, n), cycles=planted)
            found = check_acyclic(res)
            disagree += len(found) != planted or reported_cycles(found) != cycle_oracle(raw, n)
        for _ in range(500):
            store = Store.from_resource(random_resource(rnd, rnd.randint(1, 10)))
            words = {o for _, e in store.resource.iter_entries() for f in e.all_forms() for o in f.orthographies}
            probes = words | {w.upper() for w in words} | {"", "absent"}
            disagree += any(
                [h.key for h in lookup(store, w)] != lookup_scan(store.resource, w) for w in probes
            )
        assert disagree == 0, f"{disagree} disagreement(s) out of 1500 cases"


# criterion 7


def faulty_corpus(directory):
    """The fixture corpus with several independent faults, so reports are non-empty."""
    paths = copy_corpus(directory)
    for name in ("seg-dangling", "dup-id", "cycle", "date-order", "bad-language"):
        m = next(m for m in MUTATIONS if m.name == name)
        target = directory / m.file
        target.write_text(target.read_text("utf-8").replace(m.old, m.new, 1), "utf-8")
    return paths


def cli(args, hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed), PYTHONPATH=str(SRC))
    env.pop("LMFKIT_PROFILE", None)
    proc = subprocess.run([sys.executable, "-m", "lmfkit.cli", *args], capture_output=True, env=env, check=False)
    return proc.returncode, proc.stdout


def test_criterion_7_determinism(tmp_path):
    with criterion(7, "byte-identical reports and exports over runs and file orders"):
        faulty = faulty_corpus(_mkdir(tmp_path / "faulty"))
        clean = [str(p) for p in CORPUS]
        outputs = set()
        orders = list(itertools.permutations(faulty))
        rnd = random.Random(7)
        runs = 0
        for order in [orders[0], orders[-1], *rnd.sample(orders, 4)]:
            _, report = ingest(order)
            outputs.add((report.render_text(), report.render_json()))
            runs += 1
        assert runs >= 5 and len(outputs) == 1
        assert next(iter(outputs))[0].count("\n") >= 5

        exports = {export_json(ingest(p)[0]) for p in itertools.permutations(clean)}
        assert len(exports) == 1

        seen = set()
        for seed, order in zip(range(5), [faulty, faulty[::-1], *rnd.sample(orders, 3)]):
            order = [str(p) for p in order]
            text = cli(["validate", *order], seed)
            js = cli(["validate", "--format", "json", *order], seed)
            exp = cli(["export", "--corpus", *rnd.sample(clean, len(clean))], seed)
            seen.add((text, js, exp))
        assert len(seen) == 1
        (text, js, exp), = seen
        assert text[0] == 1 and js[0] == 1 and exp[0] == 0
        assert exp[1] == next(iter(exports))
        assert json.loads(js[1]) == json.loads(next(iter(outputs))[1])


def _mkdir(path):
    path.mkdir()
    return path
