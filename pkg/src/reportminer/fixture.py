"""Synthetic fixture corpus with a ground-truth manifest.

The real inquiry report and its annotations cannot ship with the toolkit, so
tests and demos run against a generated stand-in.  The generator plants:

  * two disjoint topic clusters of filler paragraphs (embedding tests),
  * labeled narrative paragraphs with marker tokens matching rule patterns
    (classifier and annotation tests),
  * gazetteer and title-rule entities with exact character spans,
  * communication sentences and transfer sentences (network and rule-mining
    tests), including deliberately unparseable transfer paragraphs,
  * one token that occurs in exactly 25 paragraphs (pagination tests).

Everything is drawn from one seeded generator, so the same (seed, size)
always produces byte-identical corpus, sidecar files and manifest.
"""

import csv
import json
from collections import Counter
from dataclasses import dataclass
from itertools import cycle
from pathlib import Path

import numpy as np

from .corpus import make_para_id, tokenize

# matches the default EmbeddingConfig.min_count so every written seed term is
# guaranteed to be in the trained vocabulary
_SEED_MIN_OCCURRENCES = 3

CLUSTER_A_VOCAB = [
    "arithmetic", "catechism", "choir", "copybook", "chalk", "blackboard", "grammar",
    "spelling", "recitation", "psalm", "hymn", "vespers", "rosary", "chapel", "sacristy",
    "altar", "candle", "prayer", "missal", "homily", "scripture", "parable", "gospel",
    "penmanship", "dictation", "composition", "reader", "primer", "slate", "inkwell",
    "desk", "bench", "classroom", "refectory", "dormitory", "corridor", "bell", "assembly",
    "roll", "register", "uniform", "polish", "scholarship", "examination", "certificate",
    "merit", "conduct", "silence", "obedience", "devotion", "novena", "litany",
    "procession", "feastday", "sacrament", "communion", "confession", "benediction",
    "incense", "organ",
]

CLUSTER_B_VOCAB = [
    "plough", "harrow", "furrow", "barley", "oats", "silage", "byre", "heifer", "bullock",
    "pasture", "meadow", "scythe", "sickle", "haystack", "stable", "harness", "bridle",
    "saddle", "forge", "anvil", "bellows", "horseshoe", "cobbler", "awl", "leather",
    "tannery", "sawmill", "timber", "joinery", "chisel", "mallet", "lathe", "sawdust",
    "workshop", "apprentice", "bootmaking", "tailoring", "loom", "spindle", "wool",
    "flock", "shears", "lambing", "calving", "dairy", "churn", "butter", "creamery",
    "orchard", "beehive", "turf", "bog", "spade", "drainage", "fencing", "gatepost",
    "paddock", "threshing", "plot", "foddering",
]

TRANSFER_TERMS = ["transferred", "transfer", "reassigned", "reassignment", "relocated",
                  "relocation", "posted", "posting", "dispatched", "removal"]
ABUSE_TERMS = ["beatings", "beaten", "punishment", "punishments", "bruises",
               "mistreatment", "cruelty", "neglect", "severity", "harshness"]
TESTIMONY_TERMS = ["testified", "witness", "witnesses", "testimony", "recalled",
                   "remembered", "sworn", "statement", "statements", "account"]
COMMUNICATION_VOCAB = ["letter", "letters", "meeting", "meetings", "wrote", "telephone",
                       "telephoned", "visited", "correspondence", "memo"]
COMMUNICATION_SEEDS = ["letter", "meeting", "telephone", "wrote", "visited"]

TRANSFER_LABEL = "transfer"
ABUSE_LABEL = "abuse-description"
TESTIMONY_LABEL = "testimony"
# background class so the trained forest has somewhere to put paragraphs that
# carry no category signal at all (filler chapters, administrative text)
OTHER_LABEL = "other"

PAGINATION_TOKEN = "docket"
PAGINATION_HITS = 25

TITLE_RULES = ["Br", "Fr", "Sr"]

_GAZETTEER_PERSONS = [("Br Pierre", "br_pierre"), ("Fr Thomas", "fr_thomas"),
                      ("Sr Agnes", "sr_agnes"), ("Mr Sullivan", "mr_sullivan"),
                      ("Br Alphonse", "br_alphonse")]
_RULE_PERSONS = [("Br Victor", "br_victor"), ("Fr Martin", "fr_martin"),
                 ("Sr Louise", "sr_louise"), ("Fr John Murphy", "fr_john_murphy")]
_INSTITUTIONS = [("Artane", "artane"), ("Letterfrack", "letterfrack"),
                 ("Daingean", "daingean"), ("Goldenbridge", "goldenbridge"),
                 ("Ferryhouse", "ferryhouse"), ("St Brendan's", "st_brendans"),
                 ("St Brendan's School", "st_brendans_school")]
_ORGANIZATIONS = [("Department of Education", "dept_education")]
_PLACES = [("Dublin", "dublin"), ("Galway", "galway")]

_FILLER_SENTENCES = [
    "The inquiry reviewed the surviving records in careful detail.",
    "Conditions during the period remained poor despite repeated review.",
    "The management discussed the findings at considerable length.",
    "Funding for the residence depended on the annual grant.",
    "Little of the routine was set down in the ledgers.",
    "The numbers resident varied greatly from year to year.",
    "An official inspection was recorded in the spring of that year.",
    "The committee noted the absence of reliable paperwork at the time.",
    "Staff changed often and much of the daily record was lost.",
    "The grant system rewarded numbers rather than care.",
]

_CLUSTER_SENTENCE_LEN = 8
_CLUSTER_SENTENCES = 3


class _Para:
    """Accumulates text and entity spans while a paragraph is composed."""

    def __init__(self):
        self.text = ""
        self.mentions: list[dict] = []

    def add(self, text: str) -> None:
        self.text += text

    def entity(self, surface: str, entity_type: str, canonical_id: str) -> None:
        start = len(self.text)
        self.text += surface
        self.mentions.append({"start": start, "end": start + len(surface),
                              "surface": surface, "entity_type": entity_type,
                              "canonical_id": canonical_id})


def _cluster_paragraphs(vocab: list[str], n_paras: int, rng) -> list[str]:
    slots = n_paras * _CLUSTER_SENTENCE_LEN * _CLUSTER_SENTENCES
    stream = vocab * (slots // len(vocab) + 1)
    stream = stream[:slots]
    order = rng.permutation(slots)
    stream = [stream[i] for i in order]
    paras = []
    for p in range(n_paras):
        words = stream[p * _CLUSTER_SENTENCE_LEN * _CLUSTER_SENTENCES:
                       (p + 1) * _CLUSTER_SENTENCE_LEN * _CLUSTER_SENTENCES]
        sentences = []
        for s in range(_CLUSTER_SENTENCES):
            chunk = words[s * _CLUSTER_SENTENCE_LEN:(s + 1) * _CLUSTER_SENTENCE_LEN]
            sentences.append(chunk[0].capitalize() + " " + " ".join(chunk[1:]) + ".")
        paras.append(" ".join(sentences))
    return paras


@dataclass
class _NarrPara:
    role: str                      # transfer | abuse | testimony | other
    para: _Para
    label: str | None = None
    rule_labels: tuple[str, ...] = ()
    event: dict | None = None      # manifest transfer event (para_id filled later)
    exception_reason: str | None = None


def generate_fixture(out_dir: Path, paragraphs: int = 200, seed: int = 7) -> dict:
    """Write corpus.jsonl plus sidecar files and return the manifest."""
    if paragraphs < 50:
        raise ValueError("fixture needs at least 50 paragraphs")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    n_a = n_b = round(paragraphs * 0.3)
    n_narr = paragraphs - n_a - n_b
    n_transfer = round(n_narr * 0.3)
    n_abuse = round(n_narr * 0.3)
    n_testimony = round(n_narr * 0.3)
    n_other = n_narr - n_transfer - n_abuse - n_testimony

    cluster_a = _cluster_paragraphs(CLUSTER_A_VOCAB, n_a, rng)
    cluster_b = _cluster_paragraphs(CLUSTER_B_VOCAB, n_b, rng)

    roles = ([TRANSFER_LABEL] * n_transfer + ["abuse"] * n_abuse
             + ["testimony"] * n_testimony + ["other"] * n_other)
    rng.shuffle(roles)

    docket_slots = set(rng.choice(n_narr, size=min(PAGINATION_HITS, n_narr),
                                  replace=False).tolist())

    # communication sentences go in every "other" paragraph plus enough
    # abuse/testimony paragraphs to reach ~20% of the narrative; the floor of
    # 15 keeps every communication-vocabulary word above min_count
    capable = sum(1 for r in roles if r != TRANSFER_LABEL)
    comm_target = max(n_other, round(n_narr * 0.2), min(15, capable))
    comm_slots = {i for i, r in enumerate(roles) if r == "other"}
    for i, r in enumerate(roles):
        if len(comm_slots) >= comm_target:
            break
        if r in ("abuse", "testimony"):
            comm_slots.add(i)

    persons = _GAZETTEER_PERSONS + _RULE_PERSONS
    person_types = {cid: "PERSON" for _, cid in persons}
    transfer_cycle = cycle(TRANSFER_TERMS[1:])
    abuse_cycle = cycle(ABUSE_TERMS[1:])
    testimony_cycle = cycle(TESTIMONY_TERMS[1:])
    comm_cycle = cycle(COMMUNICATION_VOCAB)
    filler_cycle = cycle(_FILLER_SENTENCES)
    place_cycle = cycle(_PLACES)

    def pick_person():
        return persons[int(rng.integers(0, len(persons)))]

    def pick_two_persons():
        i = int(rng.integers(0, len(persons)))
        j = int(rng.integers(0, len(persons) - 1))
        if j >= i:
            j += 1
        return persons[i], persons[j]

    def pick_two_institutions():
        i = int(rng.integers(0, len(_INSTITUTIONS)))
        j = int(rng.integers(0, len(_INSTITUTIONS) - 1))
        if j >= i:
            j += 1
        return _INSTITUTIONS[i], _INSTITUTIONS[j]

    def comm_sentence(p: _Para):
        a, b = pick_two_persons()
        c1, c2, c3 = next(comm_cycle), next(comm_cycle), next(comm_cycle)
        p.entity(a[0], "PERSON", a[1])
        p.add(" contacted ")
        p.entity(b[0], "PERSON", b[1])
        p.add(f" regarding the {c1}, the {c2} and the {c3} that followed.")

    narr: list[_NarrPara] = []
    transfer_seen = 0
    role_counters = {"abuse": 0, "testimony": 0, "other": 0}
    for i, role in enumerate(roles):
        p = _Para()
        item = _NarrPara(role=role, para=p)
        if role == TRANSFER_LABEL:
            transfer_seen += 1
            item.label = TRANSFER_LABEL
            year = int(rng.integers(1941, 1969))
            if transfer_seen == 1 and n_transfer >= 6:
                inst_a, inst_b = pick_two_institutions()
                p.add("Several boys were transferred from ")
                p.entity(inst_a[0], "INSTITUTION", inst_a[1])
                p.add(" to ")
                p.entity(inst_b[0], "INSTITUTION", inst_b[1])
                p.add(f" in {year}.")
                item.rule_labels = (TRANSFER_LABEL,)
                item.exception_reason = "no person mention"
            elif transfer_seen == 2 and n_transfer >= 6:
                person = pick_person()
                p.entity(person[0], "PERSON", person[1])
                p.add(f" was transferred without notice in {year}.")
                item.rule_labels = (TRANSFER_LABEL,)
                item.exception_reason = "no institution mention"
            else:
                person = pick_person()
                inst_a, inst_b = pick_two_institutions()
                to_only = rng.random() < 0.15
                p.entity(person[0], "PERSON", person[1])
                if to_only:
                    p.add(" was transferred to ")
                    p.entity(inst_b[0], "INSTITUTION", inst_b[1])
                else:
                    p.add(" was transferred from ")
                    p.entity(inst_a[0], "INSTITUTION", inst_a[1])
                    p.add(" to ")
                    p.entity(inst_b[0], "INSTITUTION", inst_b[1])
                p.add(f" in {year}.")
                t1, t2 = next(transfer_cycle), next(transfer_cycle)
                p.add(f" The {t1} followed the {t2} recorded by the order.")
                flagged = rng.random() < 0.4
                if flagged:
                    a1 = next(abuse_cycle)
                    first_inst = inst_b if to_only else inst_a
                    p.add(" Records kept at ")
                    p.entity(first_inst[0], "INSTITUTION", first_inst[1])
                    p.add(f" noted beatings and {a1} before the transfer.")
                    item.rule_labels = (ABUSE_LABEL, TRANSFER_LABEL)
                else:
                    item.rule_labels = (TRANSFER_LABEL,)
                item.event = {
                    "para_id": None,
                    "person": person[1],
                    "from_institution": None if to_only else inst_a[1],
                    "to_institution": inst_b[1],
                    "year": year,
                    "context_flags": ["allegation_context"] if flagged else [],
                }
        elif role == "abuse":
            k = role_counters["abuse"]
            role_counters["abuse"] += 1
            item.label = ABUSE_LABEL
            item.rule_labels = (ABUSE_LABEL,)
            a1 = next(abuse_cycle)
            inst = _INSTITUTIONS[int(rng.integers(0, len(_INSTITUTIONS)))]
            p.add(f"The committee heard evidence of beatings and {a1} at ")
            p.entity(inst[0], "INSTITUTION", inst[1])
            p.add(".")
            if k % 2 == 0:
                person = pick_person()
                p.add(" ")
                p.entity(person[0], "PERSON", person[1])
                p.add(" was named in the complaints.")
            p.add(" " + next(filler_cycle))
        elif role == "testimony":
            k = role_counters["testimony"]
            role_counters["testimony"] += 1
            item.label = TESTIMONY_LABEL
            item.rule_labels = (TESTIMONY_LABEL,)
            t1, t2 = next(testimony_cycle), next(testimony_cycle)
            p.add(f"A former resident testified about {t1} and {t2} during the hearings.")
            if k % 2 == 0:
                inst = _INSTITUTIONS[int(rng.integers(0, len(_INSTITUTIONS)))]
                p.add(" The witness described ")
                p.entity(inst[0], "INSTITUTION", inst[1])
                p.add(" at length.")
            elif k % 3 == 0:
                place = next(place_cycle)
                p.add(" The hearings in ")
                p.entity(place[0], "PLACE", place[1])
                p.add(" drew wide attention.")
            p.add(" " + next(filler_cycle))
        else:
            k = role_counters["other"]
            role_counters["other"] += 1
            item.label = OTHER_LABEL
            p.add(next(filler_cycle) + " ")
            comm_sentence(p)
            if k % 2 == 0:
                org = _ORGANIZATIONS[0]
                inst = _INSTITUTIONS[int(rng.integers(0, len(_INSTITUTIONS)))]
                p.add(" The ")
                p.entity(org[0], "ORGANIZATION", org[1])
                p.add(" wrote to the manager of ")
                p.entity(inst[0], "INSTITUTION", inst[1])
                p.add(".")
        if i in comm_slots and role in ("abuse", "testimony"):
            p.add(" ")
            comm_sentence(p)
        if i in docket_slots:
            p.add(" The docket was filed promptly.")
        narr.append(item)

    # --- lay paragraphs out into chapters -------------------------------
    def split_sizes(total: int, parts: int) -> list[int]:
        return [total // parts + (1 if i < total % parts else 0) for i in range(parts)]

    doc_specs: list[tuple[str, str, int, list, bool]] = []
    a_sizes = split_sizes(n_a, 2)
    b_sizes = split_sizes(n_b, 2)
    narr_sizes = split_sizes(n_narr, 4)
    cursor = 0
    for d, size in enumerate(a_sizes):
        doc_specs.append((f"chapter_{d+1:02d}", f"School Routine {d+1}", d + 1,
                          cluster_a[cursor:cursor + size], False))
        cursor += size
    cursor = 0
    for d, size in enumerate(b_sizes):
        doc_specs.append((f"chapter_{d+3:02d}", f"Farm and Trades {d+1}", d + 3,
                          cluster_b[cursor:cursor + size], False))
        cursor += size
    cursor = 0
    for d, size in enumerate(narr_sizes):
        doc_specs.append((f"chapter_{d+5:02d}", f"Inquiry Narratives {d+1}", d + 5,
                          narr[cursor:cursor + size], True))
        cursor += size

    documents = []
    cluster_a_ids: list[str] = []
    cluster_b_ids: list[str] = []
    labels: dict[str, str] = {}
    rule_annotations: dict[str, list[str]] = {}
    mentions: dict[str, list[dict]] = {}
    events: list[dict] = []
    exceptions: list[dict] = []
    token_counts: Counter = Counter()
    para_total = 0

    for doc_id, title, chapter_no, items, is_narr in doc_specs:
        blocks = []
        for ordinal, entry in enumerate(items):
            para_id = make_para_id(doc_id, ordinal)
            para_total += 1
            if is_narr:
                body = entry.para.text
                ryan = f"{chapter_no}.{ordinal + 1:02d}"
                blocks.append(f"{ryan} {body}")
                if entry.label:
                    labels[para_id] = entry.label
                if entry.rule_labels:
                    rule_annotations[para_id] = sorted(entry.rule_labels)
                if entry.para.mentions:
                    mentions[para_id] = entry.para.mentions
                if entry.event is not None:
                    event = dict(entry.event)
                    event["para_id"] = para_id
                    event["event_id"] = f"{para_id}/transfer"
                    events.append(event)
                if entry.exception_reason:
                    exceptions.append({"para_id": para_id, "reason": entry.exception_reason})
            else:
                body = entry
                blocks.append(body)
                if chapter_no <= 2:
                    cluster_a_ids.append(para_id)
                else:
                    cluster_b_ids.append(para_id)
            token_counts.update(tokenize(body))
        documents.append({"doc_id": doc_id, "title": title, "chapter_no": chapter_no,
                          "text": "\n\n".join(blocks), "paragraphs": len(items)})

    # a spread of pure filler paragraphs is labeled as background so the
    # classifier learns to keep category labels off signal-free text
    for pid in cluster_a_ids[::8] + cluster_b_ids[::8]:
        labels[pid] = OTHER_LABEL

    _self_check(documents, cluster_a_ids, cluster_b_ids, rule_annotations,
                docket_expected=len(docket_slots))

    # seed terms must survive the default embedding min_count filter; at small
    # corpus sizes the rotating category terms can fall below it
    def frequent_seeds(candidates: list[str], keep: int = 3) -> list[str]:
        kept = [t for t in candidates if token_counts[t] >= _SEED_MIN_OCCURRENCES]
        if not kept:
            raise RuntimeError(f"no viable seed among {candidates}")
        return kept[:keep]

    manifest = {
        "version": 1,
        "seed": seed,
        "counts": {"documents": len(documents), "paragraphs": para_total,
                   "tokens": sum(token_counts.values())},
        "documents": [{k: d[k] for k in ("doc_id", "title", "chapter_no", "paragraphs")}
                      for d in documents],
        "clusters": {
            "a": {"vocab": CLUSTER_A_VOCAB, "seed_terms": CLUSTER_A_VOCAB[:3],
                  "para_ids": cluster_a_ids},
            "b": {"vocab": CLUSTER_B_VOCAB, "seed_terms": CLUSTER_B_VOCAB[:3],
                  "para_ids": cluster_b_ids},
        },
        "category_vocab": {TRANSFER_LABEL: TRANSFER_TERMS, ABUSE_LABEL: ABUSE_TERMS,
                           TESTIMONY_LABEL: TESTIMONY_TERMS},
        "communication": {"vocab": COMMUNICATION_VOCAB,
                          "seed_terms": frequent_seeds(COMMUNICATION_SEEDS,
                                                       keep=len(COMMUNICATION_SEEDS))},
        "labels": labels,
        "rule_annotations": rule_annotations,
        "gazetteer": _gazetteer_rows(),
        "title_rules": TITLE_RULES,
        "entities": (
            [{"canonical_id": cid, "entity_type": "PERSON", "in_gazetteer": True}
             for _, cid in _GAZETTEER_PERSONS]
            + [{"canonical_id": cid, "entity_type": "PERSON", "in_gazetteer": False}
               for _, cid in _RULE_PERSONS]
            + [{"canonical_id": cid, "entity_type": "INSTITUTION", "in_gazetteer": True}
               for _, cid in _INSTITUTIONS]
            + [{"canonical_id": cid, "entity_type": "ORGANIZATION", "in_gazetteer": True}
               for _, cid in _ORGANIZATIONS]
            + [{"canonical_id": cid, "entity_type": "PLACE", "in_gazetteer": True}
               for _, cid in _PLACES]
        ),
        "mentions": mentions,
        "transfers": {"events": events, "exceptions": exceptions},
        "search": {"pagination_token": PAGINATION_TOKEN,
                   "pagination_hits": len(docket_slots)},
    }

    seed_files = {
        "cluster_a": manifest["clusters"]["a"]["seed_terms"],
        "cluster_b": manifest["clusters"]["b"]["seed_terms"],
        "communication": manifest["communication"]["seed_terms"],
        "transfer": frequent_seeds(TRANSFER_TERMS),
        "abuse": frequent_seeds(ABUSE_TERMS),
        "testimony": frequent_seeds(TESTIMONY_TERMS),
    }
    _write_outputs(out_dir, documents, manifest, labels, seed_files)
    return manifest


def _gazetteer_rows() -> list[dict]:
    rows = []
    for surface, cid in _GAZETTEER_PERSONS:
        rows.append({"surface": surface, "entity_type": "PERSON", "canonical_id": cid})
    for surface, cid in _INSTITUTIONS:
        rows.append({"surface": surface, "entity_type": "INSTITUTION", "canonical_id": cid})
    for surface, cid in _ORGANIZATIONS:
        rows.append({"surface": surface, "entity_type": "ORGANIZATION", "canonical_id": cid})
    for surface, cid in _PLACES:
        rows.append({"surface": surface, "entity_type": "PLACE", "canonical_id": cid})
    return rows


def _self_check(documents, cluster_a_ids, cluster_b_ids, rule_annotations,
                docket_expected) -> None:
    """Guard the invariants the acceptance suite depends on."""
    cluster_tokens = {"a": set(), "b": set()}
    other_tokens: set[str] = set()
    docket_paras = 0
    for doc in documents:
        for block in doc["text"].split("\n\n"):
            toks = set(tokenize(block))
            # strip the d.dd label tokens the same way ingestion will
            if doc["chapter_no"] >= 5:
                toks = set(tokenize(block.split(" ", 1)[1]))
            if doc["chapter_no"] <= 2:
                cluster_tokens["a"] |= toks
            elif doc["chapter_no"] <= 4:
                cluster_tokens["b"] |= toks
            else:
                other_tokens |= toks
                if PAGINATION_TOKEN in toks:
                    docket_paras += 1
    if cluster_tokens["a"] & cluster_tokens["b"]:
        raise RuntimeError("cluster vocabularies overlap")
    if cluster_tokens["a"] & other_tokens or cluster_tokens["b"] & other_tokens:
        raise RuntimeError("cluster tokens leak into narrative paragraphs")
    if docket_paras != docket_expected:
        raise RuntimeError(f"pagination token in {docket_paras} paragraphs, "
                           f"expected {docket_expected}")


def _write_outputs(out_dir: Path, documents, manifest, labels, seed_files) -> None:
    with (out_dir / "corpus.jsonl").open("w", encoding="utf-8") as fh:
        for doc in documents:
            fh.write(json.dumps({"doc_id": doc["doc_id"], "title": doc["title"],
                                 "chapter_no": doc["chapter_no"], "text": doc["text"]},
                                ensure_ascii=False, sort_keys=True) + "\n")
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=1) + "\n",
        encoding="utf-8")
    with (out_dir / "gazetteer.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["surface", "entity_type", "canonical_id"])
        for row in _gazetteer_rows():
            writer.writerow([row["surface"], row["entity_type"], row["canonical_id"]])
    (out_dir / "titles.txt").write_text("\n".join(TITLE_RULES) + "\n", encoding="utf-8")
    with (out_dir / "labels.jsonl").open("w", encoding="utf-8") as fh:
        for para_id in sorted(labels):
            fh.write(json.dumps({"para_id": para_id, "label": labels[para_id]},
                                sort_keys=True) + "\n")
    patterns = [
        {"label": TRANSFER_LABEL, "all_of": ["transferred"]},
        {"label": ABUSE_LABEL, "all_of": ["beatings"]},
        {"label": TESTIMONY_LABEL, "all_of": ["testified"]},
    ]
    (out_dir / "patterns.json").write_text(
        json.dumps(patterns, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    seeds_dir = out_dir / "seeds"
    seeds_dir.mkdir(exist_ok=True)
    for name, terms in seed_files.items():
        (seeds_dir / f"{name}.txt").write_text("\n".join(terms) + "\n", encoding="utf-8")

    # ready-to-run pipeline config pointing at the files above
    pipeline_cfg = {
        "corpus": "corpus.jsonl",
        "store": "store",
        "gazetteer": "gazetteer.csv",
        "titles": "titles.txt",
        "labels": "labels.jsonl",
        "patterns": "patterns.json",
        "lexicon_seeds": {name: f"seeds/{name}.txt" for name in seed_files},
        "feature_lexicons": ["transfer", "abuse", "testimony"],
        "communication_lexicon": "communication",
        "embedding": {"dim": 100, "window": 5, "negatives": 5, "epochs": 15,
                      "min_count": 3, "initial_learning_rate": 0.025},
        "lexicon": {"ensemble_count": 5, "top_n": 30, "include_seeds": True},
        "forest": {"n_trees": 100, "max_depth": 12, "min_leaf": 2,
                   "features_per_split": None},
        "annotate_threshold": 0.5,
        "min_support": 0.05,
        "min_confidence": 0.6,
        "max_itemset_size": 4,
        "seed": manifest["seed"],
    }
    (out_dir / "pipeline.json").write_text(
        json.dumps(pipeline_cfg, sort_keys=True, indent=1) + "\n", encoding="utf-8")


def load_manifest(fixture_dir: Path) -> dict:
    return json.loads((Path(fixture_dir) / "manifest.json").read_text(encoding="utf-8"))
