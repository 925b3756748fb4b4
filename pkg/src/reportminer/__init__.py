"""reportminer: explore long inquiry-report corpora.

Pipeline modules, in dependency order: corpus, embedding, annotate, entities,
networks, transfers, fixture (synthetic test corpus), service (HTTP API),
cli (orchestration).
"""

__version__ = "0.1.0"
