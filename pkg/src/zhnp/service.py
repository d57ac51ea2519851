"""HTTP service that feeds sampled dataset items to human annotators under
protocol A1 (three yes/no questions about the stored annotation) or A2
(direct labeling with the stored labels withheld), and persists their
judgments.

State is a directory of sessions, each an append-only records.jsonl next to
its session.json; every acknowledged record survives a restart. The wire
format of the export endpoint is exactly the AssessmentRecord line schema,
so exported files feed the agreement scorer unchanged.

Endpoints:
    POST /sessions                      create (idempotent on identical config)
    GET  /sessions/{id}/next?annotator= next unanswered item or a done marker
    POST /sessions/{id}/records         submit one AssessmentRecord
    GET  /sessions/{id}/export          all records, one JSON object per line
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .corpus import AnnotatedNP, AssessmentRecord
from .hashing import stable_rank
from .models import CorpusIndex


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    id: str
    protocol: str
    sample_size: int
    annotators: tuple
    annotators_per_item: int
    seed: int
    include_context: bool
    item_ids: tuple
    plan: dict  # item_id -> tuple of annotator ids

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "protocol": self.protocol,
            "sample_size": self.sample_size,
            "annotators": list(self.annotators),
            "annotators_per_item": self.annotators_per_item,
            "seed": self.seed,
            "include_context": self.include_context,
            "item_ids": list(self.item_ids),
            "plan": {iid: list(anns) for iid, anns in self.plan.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Session":
        return cls(
            id=obj["id"],
            protocol=obj["protocol"],
            sample_size=obj["sample_size"],
            annotators=tuple(obj["annotators"]),
            annotators_per_item=obj["annotators_per_item"],
            seed=obj["seed"],
            include_context=obj["include_context"],
            item_ids=tuple(obj["item_ids"]),
            plan={iid: tuple(anns) for iid, anns in obj["plan"].items()},
        )

    def queue_for(self, annotator_id: str) -> list:
        return [iid for iid in self.item_ids if annotator_id in self.plan[iid]]


class SessionStore:
    """Sessions plus their append-only record logs under one state dir."""

    def __init__(self, dataset: dict, index: CorpusIndex, state_dir):
        self.dataset = dataset
        self.index = index
        self.state_dir = state_dir
        self.sessions = {}
        self._records = {}  # session id -> list of AssessmentRecord
        self._seen = {}  # session id -> set of (item, annotator, protocol)
        self._lock = threading.Lock()
        os.makedirs(state_dir, exist_ok=True)
        for name in sorted(os.listdir(state_dir)):
            meta = os.path.join(state_dir, name, "session.json")
            if not os.path.isfile(meta):
                continue
            with open(meta, encoding="utf-8") as f:
                session = Session.from_json(json.load(f))
            self.sessions[session.id] = session
            self._records[session.id] = []
            self._seen[session.id] = set()
            log = self._log_path(session.id)
            if os.path.isfile(log):
                with open(log, encoding="utf-8") as f:
                    for line in f:
                        line = line.strip()
                        if not line:
                            continue
                        rec = AssessmentRecord.from_json(json.loads(line))
                        self._records[session.id].append(rec)
                        self._seen[session.id].add(
                            (rec.item_id, rec.annotator_id, rec.protocol)
                        )

    def _log_path(self, session_id):
        return os.path.join(self.state_dir, session_id, "records.jsonl")

    def create_session(self, protocol: str, sample_size: int, annotators,
                       annotators_per_item: int = 2, seed: int = 0,
                       include_context: bool = False) -> Session:
        """Deterministically sample items and plan annotator assignments.

        The sample is the lowest-ranked sample_size items under a seeded
        hash of the item id; assignments rotate through the annotator list
        so workloads split evenly. Creating a session twice with identical
        config returns the existing one.
        """
        if protocol not in ("A1", "A2"):
            raise ServiceError(400, f"unknown protocol {protocol!r}")
        annotators = tuple(annotators)
        if not annotators or len(set(annotators)) != len(annotators):
            raise ServiceError(400, "annotators must be a non-empty list of distinct ids")
        if not 1 <= annotators_per_item <= len(annotators):
            raise ServiceError(
                400, f"annotators_per_item must be in [1, {len(annotators)}]"
            )
        if sample_size < 1:
            raise ServiceError(400, "sample_size must be >= 1")
        if sample_size > len(self.dataset):
            raise ServiceError(
                400, f"sample_size {sample_size} exceeds dataset size {len(self.dataset)}"
            )
        config = json.dumps(
            {
                "protocol": protocol,
                "sample_size": sample_size,
                "annotators": list(annotators),
                "annotators_per_item": annotators_per_item,
                "seed": seed,
                "include_context": include_context,
            },
            sort_keys=True,
        )
        session_id = hashlib.sha1(config.encode("utf-8")).hexdigest()[:12]
        if session_id in self.sessions:
            return self.sessions[session_id]
        ranked = sorted(self.dataset, key=lambda iid: (stable_rank(seed, iid), iid))
        item_ids = tuple(ranked[:sample_size])
        plan = {}
        n = len(annotators)
        for idx, iid in enumerate(item_ids):
            plan[iid] = tuple(
                annotators[(idx * annotators_per_item + r) % n]
                for r in range(annotators_per_item)
            )
        session = Session(
            id=session_id,
            protocol=protocol,
            sample_size=sample_size,
            annotators=annotators,
            annotators_per_item=annotators_per_item,
            seed=seed,
            include_context=include_context,
            item_ids=item_ids,
            plan=plan,
        )
        with self._lock:
            os.makedirs(os.path.join(self.state_dir, session_id), exist_ok=True)
            with open(os.path.join(self.state_dir, session_id, "session.json"),
                      "w", encoding="utf-8") as f:
                json.dump(session.to_json(), f, ensure_ascii=False)
                f.write("\n")
            self.sessions[session_id] = session
            self._records[session_id] = []
            self._seen[session_id] = set()
        return session

    def _session(self, session_id) -> Session:
        if session_id not in self.sessions:
            raise ServiceError(404, f"no session {session_id!r}")
        return self.sessions[session_id]

    def _item_payload(self, session: Session, item_id: str, remaining: int) -> dict:
        record = self.dataset[item_id]
        sent = self.index.sentence(record.sent_id)
        payload = {
            "item_id": item_id,
            "protocol": session.protocol,
            "sent_id": record.sent_id,
            "tokens": list(sent.zh_tokens),
            "span": {
                "start": record.zh_span.start,
                "end": record.zh_span.end,
                "head": record.zh_span.head,
            },
            "np_text": record.zh_text,
            "remaining": remaining,
        }
        if session.include_context:
            before, after = self.index.window(sent, 1)
            payload["context"] = {
                "before": [list(s.zh_tokens) for s in before],
                "after": [list(s.zh_tokens) for s in after],
            }
        if session.protocol == "A1":
            payload["labels"] = {
                "plurality": record.plurality.value,
                "definiteness": record.definiteness.value,
            }
            def article(word):
                return "an" if word[0] in "aeiou" else "a"

            plur = record.plurality.value
            defi = record.definiteness.value
            payload["questions"] = [
                "Is the highlighted noun phrase correctly identified?",
                f"Is this {article(plur)} {plur} phrase?",
                f"Is this {article(defi)} {defi} phrase?",
            ]
        return payload

    def next_item(self, session_id: str, annotator_id: str) -> dict:
        """The annotator's first assigned item still lacking their record.

        Items are served in assignment-plan order; once an item has been
        submitted it is never served to that annotator again. When the queue
        is exhausted a done marker with the completed count is returned.
        """
        session = self._session(session_id)
        if annotator_id not in session.annotators:
            raise ServiceError(403, f"annotator {annotator_id!r} not in session")
        queue = session.queue_for(annotator_id)
        pending = [
            iid for iid in queue
            if (iid, annotator_id, session.protocol) not in self._seen[session_id]
        ]
        if not pending:
            return {"done": True, "completed": len(queue)}
        return self._item_payload(session, pending[0], remaining=len(pending))

    def submit(self, session_id: str, annotator_id: str, record: AssessmentRecord) -> dict:
        """Validate and durably append one record; duplicates are conflicts."""
        session = self._session(session_id)
        if annotator_id not in session.annotators:
            raise ServiceError(403, f"annotator {annotator_id!r} not in session")
        if record.annotator_id != annotator_id:
            raise ServiceError(400, "record annotator does not match the submitting annotator")
        if record.protocol != session.protocol:
            raise ServiceError(
                400, f"record protocol {record.protocol!r} does not match session"
            )
        try:
            record.validate()
        except ValueError as e:
            raise ServiceError(400, str(e))
        if record.item_id not in session.plan:
            raise ServiceError(400, f"item {record.item_id!r} is not part of the session")
        if annotator_id not in session.plan[record.item_id]:
            raise ServiceError(400, f"item {record.item_id!r} was not assigned to this annotator")
        key = (record.item_id, record.annotator_id, record.protocol)
        with self._lock:
            if key in self._seen[session_id]:
                raise ServiceError(409, f"duplicate record for item {record.item_id!r}")
            with open(self._log_path(session_id), "a", encoding="utf-8") as f:
                f.write(json.dumps(record.to_json(), ensure_ascii=False) + "\n")
                f.flush()
                os.fsync(f.fileno())
            self._seen[session_id].add(key)
            self._records[session_id].append(record)
        return {"ok": True, "stored": len(self._records[session_id])}

    def export(self, session_id: str) -> list:
        session = self._session(session_id)
        return [rec.to_json() for rec in self._records[session.id]]


class _Handler(BaseHTTPRequestHandler):
    # Quiet the default stderr-per-request logging.
    def log_message(self, fmt, *args):
        pass

    def _respond(self, status: int, payload, jsonl: bool = False):
        if jsonl:
            body = "".join(json.dumps(obj, ensure_ascii=False) + "\n" for obj in payload)
            ctype = "application/x-ndjson; charset=utf-8"
        else:
            body = json.dumps(payload, ensure_ascii=False)
            ctype = "application/json; charset=utf-8"
        raw = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(raw)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(raw)

    def _error(self, status, message):
        self._respond(status, {"error": message})

    def _body(self):
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise ServiceError(400, "request body is not valid JSON")

    def do_OPTIONS(self):
        self._respond(204, {})

    def do_GET(self):
        store = self.server.store
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "next":
                query = parse_qs(url.query)
                annotator = query.get("annotator", [""])[0]
                if not annotator:
                    raise ServiceError(400, "missing annotator query parameter")
                self._respond(200, store.next_item(parts[1], annotator))
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "export":
                self._respond(200, store.export(parts[1]), jsonl=True)
            elif parts == ["health"]:
                self._respond(200, {"ok": True, "sessions": len(store.sessions)})
            else:
                raise ServiceError(404, f"no such endpoint {url.path}")
        except ServiceError as e:
            self._error(e.status, e.message)

    def do_POST(self):
        store = self.server.store
        parts = [p for p in urlparse(self.path).path.split("/") if p]
        try:
            body = self._body()
            if parts == ["sessions"]:
                session = store.create_session(
                    protocol=body.get("protocol"),
                    sample_size=body.get("sample_size", 0),
                    annotators=body.get("annotators", []),
                    annotators_per_item=body.get("annotators_per_item", 2),
                    seed=body.get("seed", 0),
                    include_context=body.get("include_context", False),
                )
                self._respond(200, session.to_json())
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "records":
                try:
                    record = AssessmentRecord.from_json(body)
                except (KeyError, TypeError, ValueError) as e:
                    raise ServiceError(400, f"bad record: {e}")
                self._respond(
                    201, store.submit(parts[1], record.annotator_id, record)
                )
            else:
                raise ServiceError(404, f"no such endpoint /{'/'.join(parts)}")
        except ServiceError as e:
            self._error(e.status, e.message)


def make_server(store: SessionStore, host: str = "127.0.0.1", port: int = 8377):
    server = ThreadingHTTPServer((host, port), _Handler)
    server.store = store
    return server


def serve_forever(store: SessionStore, host: str = "127.0.0.1", port: int = 8377):
    server = make_server(store, host, port)
    print(f"assessment service on http://{host}:{port} "
          f"({len(store.dataset)} items, {len(store.sessions)} sessions)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
