"""Brute-force reference implementations. Deliberately naive and written
without importing anything from arabidx."""

from itertools import combinations

LETTER_CODEPOINTS = set(range(0x0621, 0x063B)) | set(range(0x0641, 0x064B))
DELETED = set(range(0x064B, 0x0660)) | {0x0640, 0x0670} | set(range(0x06D6, 0x06EE))


def filter_chars(text):
    """One pass, one table lookup per codepoint."""
    out = []
    for ch in text:
        cp = ord(ch)
        if cp in DELETED:
            continue
        out.append(ch if cp in LETTER_CODEPOINTS else " ")
    return " ".join("".join(out).split())


def count_runs(text):
    runs, inside = 0, False
    for ch in text:
        if ch != " " and not inside:
            runs += 1
        inside = ch != " "
    return runs


def window_count(tokens, n):
    counts = {}
    for tok in tokens:
        i = 0
        while i + n <= len(tok):
            g = tok[i:i + n]
            counts[g] = counts.get(g, 0) + 1
            i += 1
    return counts


def top_k(counts, k):
    items = list(counts.items())
    # selection by repeated scan: max frequency, then smallest gram
    out = []
    while items and len(out) < k:
        best = items[0]
        for it in items[1:]:
            if it[1] > best[1] or (it[1] == best[1] and it[0] < best[0]):
                best = it
        out.append(best)
        items.remove(best)
    return out


def rank_distance(p, q, penalty):
    """p, q: lists of grams in rank order. Nested-loop rank lookup."""
    total = 0
    for i, g in enumerate(p):
        found = None
        for j, h in enumerate(q):
            if h == g:
                found = j
        total += penalty if found is None else abs(i - found)
    for h in q:
        if h not in p:
            total += penalty
    return total


def dice(p, q):
    shared = sum(1 for g in set(p) if g in set(q))
    return 2 * shared / (len(p) + len(q))


def argmin_root(products, root_len):
    """Exhaustive: the position subset whose sorted (product, position) list is
    lexicographically smallest; also has minimal product sum."""
    best = None
    for combo in combinations(range(len(products)), root_len):
        key = sorted((products[i], i) for i in combo)
        if best is None or key < best[0]:
            best = (key, combo)
    return best[1]


def min_product_sum(products, root_len):
    return min(sum(products[i] for i in c) for c in combinations(range(len(products)), root_len))


def page_scan(tokens):
    """tokens: list of (surface, page). term -> sorted pages by scanning every page."""
    pages = sorted({p for _, p in tokens})
    out = {}
    for page in pages:
        for s, p in tokens:
            if p == page:
                out.setdefault(s, [])
                if page not in out[s]:
                    out[s].append(page)
    return out


def form_feed_pages(text, clean):
    """Page per surviving word by counting form feeds before it. ``clean``
    maps a raw chunk to its words."""
    result = []
    offset = 0
    while True:
        nxt = text.find("\f", offset)
        chunk = text[offset:] if nxt < 0 else text[offset:nxt]
        page = text[:offset].count("\f") + 1
        result.extend((w, page) for w in clean(chunk))
        if nxt < 0:
            return result
        offset = nxt + 1


def occurrence_matrix(corpus):
    """corpus: dict doc_id -> token list. term -> {doc_id: [positions]}."""
    out = {}
    for doc_id in sorted(corpus):
        for i, t in enumerate(corpus[doc_id]):
            out.setdefault(t, {}).setdefault(doc_id, []).append(i)
    return out


def phrase_scan(corpus, phrase):
    hits = []
    k = len(phrase)
    for doc_id in sorted(corpus):
        toks = corpus[doc_id]
        starts = [i for i in range(len(toks) - k + 1) if toks[i:i + k] == list(phrase)]
        if starts:
            hits.append((doc_id, starts))
    return hits


def set_counts(auto, gold):
    tp = sum(1 for a in auto if a in gold)
    fp = sum(1 for a in auto if a not in gold)
    fn = sum(1 for g in gold if g not in auto)
    return tp, fp, fn
