"""The read-only HTTP API, exercised in process.

`reportminer serve --store <dir>` runs the same app under uvicorn; here the
requests go through an in-process test client so the demo needs no port.
"""

from _workspace import ensure_store

from fastapi.testclient import TestClient

from reportminer.service import create_app

store = ensure_store()
client = TestClient(create_app(store))

print("--- GET /api/stats ---")
print(f"  {client.get('/api/stats').json()}")

print("\n--- GET /api/paragraphs?q=transferred&page_size=3 ---")
body = client.get("/api/paragraphs", params={"q": "transferred",
                                             "page_size": 3}).json()
print(f"  total={body['total']}")
for hit in body["hits"]:
    print(f"  {hit['para_id']} (ryan {hit['ryan_number']}) labels={hit['labels']}")
    print(f"    {hit['snippet'][:110]}...")

print("\n--- faceted: label=transfer & chapter=5 ---")
body = client.get("/api/paragraphs", params={"label": "transfer",
                                             "chapter": 5}).json()
print(f"  total={body['total']} first={[h['para_id'] for h in body['hits'][:4]]}")

print("\n--- GET /api/entities?type=PERSON ---")
body = client.get("/api/entities", params={"type": "PERSON"}).json()
for entity in body["entities"][:4]:
    print(f"  {entity['canonical_id']:18s} mentions={entity['mention_count']}")

print("\n--- GET /api/networks/collocation?min_weight=2 ---")
graph = client.get("/api/networks/collocation", params={"min_weight": 2}).json()
print(f"  {len(graph['nodes'])} nodes, {len(graph['edges'])} edges at weight >= 2")

print("\n--- GET /api/rules/transfers?min_confidence=0.8 ---")
rules = client.get("/api/rules/transfers", params={"min_confidence": 0.8}).json()
print(f"  {len(rules['rules'])} rules;")
for rule in rules["rules"][:3]:
    print(f"    {','.join(rule['antecedent'])} => {','.join(rule['consequent'])} "
          f"(c={rule['confidence']:.2f})")

print("\n--- error shape: GET /api/paragraphs with no filters ---")
resp = client.get("/api/paragraphs")
print(f"  HTTP {resp.status_code}: {resp.json()}")
