"""Ingestion basics: paragraph segmentation, tokens, and the inverted index.

The corpus arrives as JSON Lines of documents; each document splits into
blank-line-delimited paragraphs, the unit everything downstream works at.
"""

from _workspace import ensure_store

from reportminer.corpus import load_corpus, lookup, segment_paragraphs, tokenize

store = ensure_store()
corpus = load_corpus(store)

print("--- corpus stats ---")
print(f"paragraphs: {corpus.stats.paragraph_count}")
print(f"tokens:     {corpus.stats.token_count}")
print(f"vocabulary: {corpus.stats.vocab_size}")

print("\n--- segmentation captures inline paragraph labels ---")
sample = "7.01 The first numbered paragraph.\n\nAn unnumbered one."
for ryan, text in segment_paragraphs(sample):
    print(f"  ryan_number={ryan!r}  text={text!r}")

print("\n--- tokenization is lowercase alphanumeric runs ---")
print(f"  {tokenize('Br Smith wrote to Artane in 1953.')}")

print("\n--- inverted index lookups ---")
for token in ("transferred", "letter", "docket"):
    ids = lookup(corpus.index, token)
    print(f"  {token!r}: {len(ids)} paragraphs, first: {ids[:3]}")

pid = lookup(corpus.index, "transferred")[0]
para = corpus.paragraph(pid)
print(f"\n--- paragraph {pid} (ryan {para.ryan_number}) ---")
print(f"  {para.text[:160]}...")
