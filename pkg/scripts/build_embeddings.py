"""Build the small bundled word-vector file.

Pre-trained general-purpose vectors are too large to ship, so the package
carries a compact domain embedding instead: each word is a weighted mix of
a few semantic axes plus deterministic per-word jitter. Any real GloVe text
file can replace it via ``--embeddings``.

Usage: python scripts/build_embeddings.py
"""
import hashlib
from pathlib import Path

import numpy as np

AXES = [
    "person", "group", "document", "product", "status", "lifecycle", "activity",
    "recipient", "system", "quantity", "time", "identifier", "category", "location",
]
JITTER_DIMS = 18
JITTER = 0.08

W = {
    # people and organisational units
    "user": {"person": 0.9}, "employee": {"person": 0.9}, "staff": {"person": 0.7, "group": 0.4},
    "owner": {"person": 0.7}, "creator": {"person": 0.8}, "handler": {"person": 0.8},
    "actor": {"person": 0.9}, "agent": {"person": 0.8}, "operator": {"person": 0.7, "system": 0.2},
    "performer": {"person": 0.8}, "worker": {"person": 0.9}, "clerk": {"person": 0.9},
    "officer": {"person": 0.9}, "executor": {"person": 0.8}, "analyst": {"person": 0.8},
    "supervisor": {"person": 0.9}, "manager": {"person": 0.9}, "member": {"person": 0.7, "group": 0.3},
    "requester": {"person": 0.8, "recipient": 0.1}, "approver": {"person": 0.9},
    "responsible": {"person": 0.6}, "resource": {"person": 0.6, "group": 0.3, "product": 0.2},
    "person": {"person": 1.0}, "customer": {"person": 0.7, "recipient": 0.3},
    "group": {"group": 0.9, "person": 0.2}, "team": {"group": 0.9, "person": 0.2},
    "department": {"group": 0.9}, "org": {"group": 0.8, "person": 0.2},
    "unit": {"group": 0.7, "quantity": 0.2}, "organization": {"group": 0.9},
    "role": {"person": 0.5, "group": 0.4}, "office": {"group": 0.5, "location": 0.4},
    "company": {"group": 0.7, "location": 0.2}, "support": {"group": 0.5, "activity": 0.3},
    "assignment": {"activity": 0.4, "group": 0.4, "person": 0.2},
    "assigned": {"person": 0.4, "recipient": 0.4},
    "helpdesk": {"group": 0.7, "system": 0.3}, "administration": {"group": 0.8},
    # business objects
    "doc": {"document": 0.9}, "document": {"document": 0.9}, "file": {"document": 0.8},
    "case": {"document": 0.5, "identifier": 0.3}, "order": {"document": 0.6, "product": 0.3},
    "invoice": {"document": 0.8, "quantity": 0.2}, "claim": {"document": 0.7},
    "contract": {"document": 0.8}, "letter": {"document": 0.8}, "report": {"document": 0.7},
    "request": {"document": 0.6, "activity": 0.2}, "declaration": {"document": 0.8},
    "subject": {"document": 0.5, "category": 0.3}, "application": {"document": 0.5, "system": 0.4},
    "receipt": {"document": 0.7, "quantity": 0.2}, "permit": {"document": 0.8},
    "product": {"product": 0.9}, "item": {"product": 0.9}, "article": {"product": 0.8},
    "material": {"product": 0.9}, "goods": {"product": 0.9}, "service": {"product": 0.6, "activity": 0.2},
    "artifact": {"product": 0.6, "document": 0.3}, "object": {"product": 0.7, "document": 0.3},
    "line": {"product": 0.3, "category": 0.4}, "vendor": {"person": 0.4, "group": 0.3, "recipient": 0.3},
    "supplier": {"group": 0.4, "recipient": 0.5},
    # states
    "status": {"status": 0.9}, "state": {"status": 0.8}, "closed": {"status": 0.8},
    "cancelled": {"status": 0.8}, "canceled": {"status": 0.8}, "open": {"status": 0.6},
    "paid": {"status": 0.6, "quantity": 0.3}, "blocked": {"status": 0.8},
    "approved": {"status": 0.6, "activity": 0.3}, "pending": {"status": 0.8},
    "valid": {"status": 0.6}, "is": {"status": 0.3}, "flag": {"status": 0.6, "identifier": 0.2},
    "rejected": {"status": 0.7, "activity": 0.2},
    # lifecycle
    "lifecycle": {"lifecycle": 0.9}, "transition": {"lifecycle": 0.9}, "phase": {"lifecycle": 0.8},
    "stage": {"lifecycle": 0.8}, "progress": {"lifecycle": 0.8}, "started": {"lifecycle": 0.7},
    "completed": {"lifecycle": 0.7}, "suspended": {"lifecycle": 0.6, "status": 0.2},
    "transaction": {"activity": 0.5, "quantity": 0.3, "lifecycle": 0.2},
    # activities
    "activity": {"activity": 0.9}, "action": {"activity": 0.9}, "task": {"activity": 0.9},
    "operation": {"activity": 0.8}, "step": {"activity": 0.7, "lifecycle": 0.2},
    "event": {"activity": 0.6, "time": 0.2}, "procedure": {"activity": 0.8},
    "treatment": {"activity": 0.6}, "work": {"activity": 0.5, "person": 0.2},
    "process": {"activity": 0.6}, "concept": {"activity": 0.4, "category": 0.3},
    "name": {"identifier": 0.3, "category": 0.2},
    # recipients
    "recipient": {"recipient": 0.9}, "receiver": {"recipient": 0.9}, "addressee": {"recipient": 0.9},
    "destination": {"recipient": 0.8, "location": 0.3}, "target": {"recipient": 0.8},
    "forwarded": {"recipient": 0.6, "activity": 0.3}, "sent": {"recipient": 0.5, "activity": 0.4},
    "beneficiary": {"recipient": 0.8}, "payee": {"recipient": 0.7, "quantity": 0.2},
    "party": {"recipient": 0.5, "person": 0.3}, "notified": {"recipient": 0.5, "activity": 0.2},
    "to": {"recipient": 0.4}, "by": {"person": 0.3},
    # systems
    "system": {"system": 0.9}, "channel": {"system": 0.5, "recipient": 0.5},
    "server": {"system": 0.9}, "tool": {"system": 0.7}, "platform": {"system": 0.8},
    "software": {"system": 0.8},
    # quantities
    "amount": {"quantity": 0.9}, "cost": {"quantity": 0.9}, "price": {"quantity": 0.9},
    "total": {"quantity": 0.8}, "quantity": {"quantity": 0.9}, "value": {"quantity": 0.7},
    "balance": {"quantity": 0.8}, "rate": {"quantity": 0.7}, "count": {"quantity": 0.8},
    "weight": {"quantity": 0.6}, "score": {"quantity": 0.6},
    "number": {"quantity": 0.5, "identifier": 0.5},
    # time
    "time": {"time": 0.9}, "date": {"time": 0.9}, "duration": {"time": 0.8, "quantity": 0.2},
    "timestamp": {"time": 0.9}, "year": {"time": 0.8}, "month": {"time": 0.8},
    "day": {"time": 0.8}, "age": {"time": 0.5, "quantity": 0.3},
    # identifiers
    "id": {"identifier": 0.9}, "code": {"identifier": 0.8}, "key": {"identifier": 0.7},
    "index": {"identifier": 0.7}, "version": {"identifier": 0.6}, "instance": {"identifier": 0.5},
    "variant": {"identifier": 0.6, "category": 0.2}, "reference": {"identifier": 0.7},
    # categories
    "type": {"category": 0.9}, "category": {"category": 0.9}, "kind": {"category": 0.8},
    "class": {"category": 0.7}, "sort": {"category": 0.5},
    # places
    "location": {"location": 0.9}, "place": {"location": 0.8}, "city": {"location": 0.9},
    "country": {"location": 0.9}, "region": {"location": 0.8}, "address": {"location": 0.8},
    "site": {"location": 0.8},
}


def jitter(word):
    seed = int.from_bytes(hashlib.sha256(word.encode("utf-8")).digest()[:8], "little")
    return np.random.default_rng(seed).normal(0.0, JITTER, len(AXES) + JITTER_DIMS)


def main():
    out = Path(__file__).resolve().parent.parent / "src" / "eventsrl" / "data" / "embeddings.txt"
    with open(out, "w", encoding="utf-8") as fh:
        for word in sorted(W):
            vec = jitter(word)
            for axis, weight in W[word].items():
                vec[AXES.index(axis)] += weight
            fh.write(word + " " + " ".join(f"{x:.5f}" for x in vec) + "\n")
    print(f"wrote {len(W)} vectors of dimension {len(AXES) + JITTER_DIMS} to {out}")


if __name__ == "__main__":
    main()
