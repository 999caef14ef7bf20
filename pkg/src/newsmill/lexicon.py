"""Gazetteer loading, morphological expansion, multi-pattern matching.

All known surface forms (names, places, organisations, specialist terms,
plus their suffix-expanded inflections) are compiled into one Aho-Corasick
automaton.  Scanning is a single pass over the text regardless of how many
patterns are loaded; matches are kept only at word boundaries and
overlaps are resolved leftmost, longest-match-first.

Person/organisation/place names match case-sensitively (capitalization is
signal); specialist terms match case-insensitively.
"""

from __future__ import annotations

import csv
import logging
from collections import deque
from dataclasses import dataclass, field, replace

from .corpus import TokenizedDocument

logger = logging.getLogger(__name__)

KINDS = ("person", "place", "organisation", "term")

# Generational suffixes allowed as the final token of a detected name.
_NAME_SUFFIX_TOKENS = {"jr", "sr", "ii", "iii", "iv"}


class GazetteerError(ValueError):
    pass


@dataclass(frozen=True)
class GazetteerEntry:
    entry_id: int
    kind: str
    canonical: str
    aliases: tuple[str, ...] = ()
    suffix_class: str | None = None
    latitude: float | None = None
    longitude: float | None = None
    country: str | None = None
    population: int = 0

    @property
    def forms(self) -> tuple[str, ...]:
        return (self.canonical,) + self.aliases


class SuffixTable:
    """Per-language suffix rules: class -> [(strip, append), ...].

    A rule removes ``strip`` characters from the end of the last token of
    the base form and appends ``append``; this encodes stem alternations
    like York + "ile" -> "Yorgile" as data.  The bare form (0, "") is
    always implicitly included.
    """

    def __init__(self, rules: dict[str, dict[str, list[tuple[int, str]]]] | None = None):
        # language -> class -> rules
        self._rules = rules or {}

    def add(self, language: str, suffix_class: str, strip: int, append: str) -> None:
        if not append:
            raise GazetteerError("suffix append part must be non-empty")
        self._rules.setdefault(language, {}).setdefault(suffix_class, []).append((strip, append))

    def rules_for(self, language: str, suffix_class: str | None) -> list[tuple[int, str]]:
        if suffix_class is None:
            return [(0, "")]
        explicit = self._rules.get(language, {}).get(suffix_class, [])
        return [(0, "")] + explicit

    def has(self, language: str, suffix_class: str) -> bool:
        return suffix_class in self._rules.get(language, {})

    @property
    def languages(self) -> list[str]:
        return sorted(self._rules)


def load_suffix_table(paths_by_language: dict[str, str]) -> SuffixTable:
    """Load per-language suffix files with lines ``class<TAB>strip<TAB>append``."""
    table = SuffixTable()
    for language, path in sorted(paths_by_language.items()):
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise GazetteerError(f"{path}:{lineno}: expected class<TAB>strip<TAB>append")
                cls, strip_s, append = parts
                try:
                    strip = int(strip_s)
                except ValueError:
                    raise GazetteerError(f"{path}:{lineno}: strip count {strip_s!r} is not an integer") from None
                if strip < 0:
                    raise GazetteerError(f"{path}:{lineno}: strip count must be >= 0")
                table.add(language, cls, strip, append)
    return table


def load_gazetteer(path: str) -> list[GazetteerEntry]:
    """Load a gazetteer TSV.

    Columns: entry_id, kind, canonical, aliases(|-separated), suffix_class,
    lat, lon, country, population.  Empty fields are allowed where the kind
    permits.  Duplicate canonical+kind rows are merged (aliases unioned,
    smallest entry_id kept); place rows with distinct coordinates are
    homonyms, not duplicates, and stay separate.  A duplicate entry_id is
    a hard error.
    """
    entries: dict[int, GazetteerEntry] = {}
    by_key: dict[tuple, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter="\t")
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()) or row[0].startswith("#"):
                continue
            row = list(row) + [""] * (9 - len(row))
            id_s, kind, canonical, aliases_s, suffix_class = (c.strip() for c in row[:5])
            lat_s, lon_s, country, pop_s = (c.strip() for c in row[5:9])
            try:
                entry_id = int(id_s)
            except ValueError:
                raise GazetteerError(f"{path}:{lineno}: bad entry_id {id_s!r}") from None
            if kind not in KINDS:
                raise GazetteerError(f"{path}:{lineno}: unknown kind {kind!r}")
            if not canonical:
                raise GazetteerError(f"{path}:{lineno}: empty canonical form")
            latitude = longitude = None
            population = 0
            if lat_s or lon_s:
                try:
                    latitude = float(lat_s)
                    longitude = float(lon_s)
                except ValueError:
                    raise GazetteerError(f"{path}:{lineno}: bad coordinates {lat_s!r},{lon_s!r}") from None
                if not (-90.0 <= latitude <= 90.0):
                    raise GazetteerError(f"{path}:{lineno}: latitude {latitude} out of [-90,90]")
                if not (-180.0 <= longitude <= 180.0):
                    raise GazetteerError(f"{path}:{lineno}: longitude {longitude} out of [-180,180]")
            if pop_s:
                try:
                    population = int(pop_s)
                except ValueError:
                    raise GazetteerError(f"{path}:{lineno}: bad population {pop_s!r}") from None
                if population < 0:
                    raise GazetteerError(f"{path}:{lineno}: population must be >= 0")
            aliases = tuple(a.strip() for a in aliases_s.split("|") if a.strip()) if aliases_s else ()
            entry = GazetteerEntry(
                entry_id=entry_id,
                kind=kind,
                canonical=canonical,
                aliases=aliases,
                suffix_class=suffix_class or None,
                latitude=latitude,
                longitude=longitude,
                country=country or None,
                population=population,
            )
            if entry_id in entries:
                raise GazetteerError(f"{path}:{lineno}: duplicate entry_id {entry_id}")
            key = (canonical, kind, latitude, longitude, country) if kind == "place" else (canonical, kind)
            if key in by_key:
                keeper_id = by_key[key]
                keeper = entries[keeper_id]
                merged_aliases = tuple(dict.fromkeys(keeper.aliases + aliases))
                entries[keeper_id] = replace(keeper, aliases=merged_aliases)
                continue
            by_key[key] = entry_id
            entries[entry_id] = entry
    return [entries[i] for i in sorted(entries)]


def expand_variants(entry: GazetteerEntry, suffixes: SuffixTable, language: str) -> list[str]:
    """All surface forms of an entry for one language.

    Every alias is crossed with every applicable suffix rule (bare form
    included); rules attach to the last token.  Overgenerated forms are
    harmless: they simply never occur in text.
    """
    forms: list[str] = []
    seen: set[str] = set()
    for base in entry.forms:
        for strip, append in suffixes.rules_for(language, entry.suffix_class):
            head, sep, last = base.rpartition(" ")
            if strip >= len(last):
                continue
            stem = last[: len(last) - strip] if strip else last
            candidate = head + sep + stem + append
            if candidate not in seen:
                seen.add(candidate)
                forms.append(candidate)
    return forms


@dataclass(frozen=True)
class PatternPayload:
    entry_id: int
    kind: str
    alias_index: int
    suffix: str           # the appended suffix string ("" for the bare form)
    surface: str          # the exact pattern as generated (original case)
    case_sensitive: bool


def _norm_char(c: str) -> str:
    lowered = c.lower()
    return lowered if len(lowered) == 1 else c


def normalize_for_match(text: str) -> str:
    """Length-preserving per-character lowercasing so spans stay valid."""
    return "".join(_norm_char(c) for c in text)


def is_word_char(c: str) -> bool:
    return c.isalnum()


class CompiledMatcher:
    """Aho-Corasick automaton over all normalized patterns.

    Immutable after :meth:`build`; safe to share across concurrent
    scanners.  ``scan_raw`` walks the text once and reports every pattern
    occurrence; :func:`scan` applies boundary, case and overlap rules on
    top.
    """

    def __init__(self) -> None:
        self._next: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._output: list[list[int]] = [[]]
        self._payloads: list[PatternPayload] = []
        self._pattern_index: dict[str, int] = {}
        self._pattern_groups: list[list[PatternPayload]] = []
        self._built = False

    @property
    def pattern_count(self) -> int:
        return len(self._pattern_groups)

    def add(self, payload: PatternPayload) -> None:
        if self._built:
            raise RuntimeError("matcher already built")
        normalized = normalize_for_match(payload.surface)
        if not normalized:
            return
        group = self._pattern_index.get(normalized)
        if group is None:
            node = 0
            for ch in normalized:
                nxt = self._next[node].get(ch)
                if nxt is None:
                    nxt = len(self._next)
                    self._next.append({})
                    self._fail.append(0)
                    self._output.append([])
                    self._next[node][ch] = nxt
                node = nxt
            group = len(self._pattern_groups)
            self._pattern_index[normalized] = group
            self._pattern_groups.append([])
            self._output[node].append(group)
        self._pattern_groups[group].append(payload)

    def build(self) -> None:
        if not self._pattern_groups:
            raise ValueError("cannot compile an empty pattern set")
        queue: deque[int] = deque()
        for node in self._next[0].values():
            self._fail[node] = 0
            queue.append(node)
        while queue:
            state = queue.popleft()
            for ch, nxt in self._next[state].items():
                queue.append(nxt)
                f = self._fail[state]
                while f and ch not in self._next[f]:
                    f = self._fail[f]
                self._fail[nxt] = self._next[f].get(ch, 0) if self._next[f].get(ch, 0) != nxt else 0
                self._output[nxt] = self._output[nxt] + self._output[self._fail[nxt]]
        self._pattern_lengths = [len(normalize_for_match(g[0].surface)) for g in self._pattern_groups]
        self._built = True

    def scan_raw(self, normalized_text: str) -> list[tuple[int, int, int]]:
        """All (start, end, group) occurrences; one automaton pass."""
        if not self._built:
            raise RuntimeError("matcher not built")
        hits: list[tuple[int, int, int]] = []
        state = 0
        for i, ch in enumerate(normalized_text):
            while state and ch not in self._next[state]:
                state = self._fail[state]
            state = self._next[state].get(ch, 0)
            for group in self._output[state]:
                length = self._pattern_lengths[group]
                hits.append((i - length + 1, i + 1, group))
        return hits

    def payloads_for(self, group: int) -> list[PatternPayload]:
        return self._pattern_groups[group]


def compile_matcher(patterns: list[PatternPayload]) -> CompiledMatcher:
    """Compile expanded surface forms into one automaton.

    Raises ``ValueError`` on an empty pattern set.
    """
    matcher = CompiledMatcher()
    for payload in patterns:
        matcher.add(payload)
    matcher.build()
    return matcher


def build_patterns(
    entries: list[GazetteerEntry],
    suffixes: SuffixTable,
    languages: list[str],
    kinds: tuple[str, ...] = KINDS,
) -> list[PatternPayload]:
    """Expand entries across languages into matcher payloads."""
    payloads: list[PatternPayload] = []
    seen: set[tuple[int, str]] = set()
    for entry in entries:
        if entry.kind not in kinds:
            continue
        case_sensitive = entry.kind != "term"
        for language in languages:
            for alias_index, base in enumerate(entry.forms):
                for strip, append in suffixes.rules_for(language, entry.suffix_class):
                    head, sep, last = base.rpartition(" ")
                    if strip >= len(last):
                        continue
                    stem = last[: len(last) - strip] if strip else last
                    surface = head + sep + stem + append
                    key = (entry.entry_id, surface)
                    if key in seen:
                        continue
                    seen.add(key)
                    payloads.append(
                        PatternPayload(
                            entry_id=entry.entry_id,
                            kind=entry.kind,
                            alias_index=alias_index,
                            suffix=append,
                            surface=surface,
                            case_sensitive=case_sensitive,
                        )
                    )
    return payloads


@dataclass(frozen=True)
class Mention:
    doc_id: str
    start: int
    end: int
    surface: str
    candidates: tuple[int, ...]
    entry_id: int | None = None
    kind: str | None = None

    @property
    def resolved(self) -> bool:
        return self.entry_id is not None


def _word_bounded(text: str, start: int, end: int) -> bool:
    if start > 0 and is_word_char(text[start - 1]):
        return False
    if end < len(text) and is_word_char(text[end]):
        return False
    return True


def resolve_overlaps(spans: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Leftmost, longest-match-first selection over candidate spans."""
    chosen: list[tuple[int, int]] = []
    cursor = -1
    for start, end in sorted(set(spans), key=lambda s: (s[0], -(s[1] - s[0]))):
        if start > cursor:
            chosen.append((start, end))
            cursor = end - 1
    return chosen


def scan(matcher: CompiledMatcher, tdoc: TokenizedDocument) -> list[Mention]:
    """Single-pass scan producing word-bounded, overlap-resolved mentions.

    A mention carries the candidate entry set when several entries share
    the matched surface form.
    """
    text = tdoc.text
    normalized = normalize_for_match(text)
    by_span: dict[tuple[int, int], set[int]] = {}
    for start, end, group in matcher.scan_raw(normalized):
        if not _word_bounded(text, start, end):
            continue
        matched = text[start:end]
        ids = by_span.setdefault((start, end), set())
        for payload in matcher.payloads_for(group):
            if payload.case_sensitive and matched != payload.surface:
                continue
            ids.add(payload.entry_id)
    valid_spans = [span for span, ids in by_span.items() if ids]
    mentions = []
    for start, end in resolve_overlaps(valid_spans):
        ids = tuple(sorted(by_span[(start, end)]))
        mentions.append(
            Mention(doc_id=tdoc.doc.doc_id, start=start, end=end, surface=text[start:end], candidates=ids)
        )
    return mentions


# --- disambiguation -------------------------------------------------------

@dataclass
class TitleLexicon:
    """Per-language trigger terms for person-title patterns.

    File lines are ``term<TAB>type`` where type is ``pre`` (trigger
    precedes the name), ``post`` (trigger follows the name) or
    ``modifier`` (extends a captured title leftward).
    """

    pre: dict[str, set[str]] = field(default_factory=dict)       # language -> lowercase triggers
    post: dict[str, set[str]] = field(default_factory=dict)
    modifiers: dict[str, set[str]] = field(default_factory=dict)

    def pre_for(self, language: str) -> set[str]:
        return self.pre.get(language, set())

    def post_for(self, language: str) -> set[str]:
        return self.post.get(language, set())

    def modifiers_for(self, language: str) -> set[str]:
        return self.modifiers.get(language, set())


def load_title_lexicon(paths_by_language: dict[str, str]) -> TitleLexicon:
    lex = TitleLexicon()
    buckets = {"pre": lex.pre, "post": lex.post, "modifier": lex.modifiers}
    for language, path in sorted(paths_by_language.items()):
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2 or parts[1] not in buckets:
                    raise GazetteerError(f"{path}:{lineno}: expected term<TAB>pre|post|modifier")
                buckets[parts[1]].setdefault(language, set()).add(parts[0].lower())
    return lex


class Lexicon:
    """Loaded gazetteer plus compiled matcher and per-language title triggers."""

    def __init__(
        self,
        entries: list[GazetteerEntry],
        suffixes: SuffixTable,
        languages: list[str],
        titles: TitleLexicon | None = None,
    ):
        self.entries = {e.entry_id: e for e in entries}
        self.suffixes = suffixes
        self.languages = languages
        self.titles = titles or TitleLexicon()
        self.matcher = compile_matcher(build_patterns(entries, suffixes, languages))
        term_patterns = build_patterns(entries, suffixes, languages, kinds=("term",))
        self.term_matcher = compile_matcher(term_patterns) if term_patterns else None
        self._person_ids: dict[str, int] = {}
        for e in entries:
            if e.kind != "person":
                continue
            for form in e.forms:
                prior = self._person_ids.get(form)
                if prior is None or e.entry_id < prior:
                    self._person_ids[form] = e.entry_id

    def entry(self, entry_id: int) -> GazetteerEntry:
        return self.entries[entry_id]

    def is_known_person(self, name: str) -> bool:
        return name in self._person_ids

    def person_id_for(self, name: str) -> int | None:
        return self._person_ids.get(name)

    def scan(self, tdoc: TokenizedDocument) -> list[Mention]:
        return scan(self.matcher, tdoc)


def disambiguate(mentions: list[Mention], tdoc: TokenizedDocument, lexicon: Lexicon) -> list[Mention]:
    """Resolve every mention to exactly one entry via the rule cascade.

    1. a person-title trigger immediately before the mention selects a
       person candidate;
    2. an exact multi-token match of a known person's full name selects
       that person;
    3. place homonyms prefer the document's country context (countries of
       the other resolved places), then largest population;
    4. remaining ties fall back to the smallest entry_id.
    """
    language = tdoc.doc.language
    pre_triggers = lexicon.titles.pre_for(language)
    tokens = tdoc.tokens
    lowers = [t.surface.lower() for t in tokens]

    def trigger_before(pos: int) -> bool:
        """Does a (possibly multi-token) person-title trigger end right before pos?"""
        j = 0
        while j < len(tokens) and tokens[j].end <= pos:
            j += 1
        if j == 0:
            return False
        for length in (1, 2, 3):
            if j - length >= 0 and " ".join(lowers[j - length : j]) in pre_triggers:
                return True
        return False

    resolved: list[Mention] = []
    pending: list[tuple[int, Mention]] = []
    context_countries: set[str] = set()

    for idx, mention in enumerate(mentions):
        cands = [lexicon.entry(i) for i in mention.candidates]
        choice: GazetteerEntry | None = None
        if len(cands) == 1:
            choice = cands[0]
        else:
            persons = [e for e in cands if e.kind == "person"]
            if persons:
                if trigger_before(mention.start):
                    choice = min(persons, key=lambda e: e.entry_id)
                elif " " in mention.surface and any(mention.surface in e.forms for e in persons):
                    choice = min(
                        (e for e in persons if mention.surface in e.forms), key=lambda e: e.entry_id
                    )
        if choice is not None:
            resolved.append(replace(mention, entry_id=choice.entry_id, kind=choice.kind))
            if choice.kind == "place" and choice.country:
                context_countries.add(choice.country)
        else:
            pending.append((idx, mention))
            resolved.append(mention)  # placeholder, replaced below

    for idx, mention in pending:
        cands = [lexicon.entry(i) for i in mention.candidates]
        places = [e for e in cands if e.kind == "place"]
        choice = None
        if places:
            in_context = [e for e in places if e.country and e.country in context_countries]
            pool = in_context or places
            choice = max(pool, key=lambda e: (e.population, -e.entry_id))
        if choice is None:
            choice = min(cands, key=lambda e: e.entry_id)
        resolved[idx] = replace(mention, entry_id=choice.entry_id, kind=choice.kind)

    return resolved


@dataclass
class TitleDetections:
    new_persons: list[tuple[str, str]]          # (candidate name, title text)
    known_person_titles: list[tuple[int, str]]  # (entry_id, title text)


def _is_capitalized(token: str) -> bool:
    return token[:1].isupper() and any(c.isalpha() for c in token)


def detect_new_persons(
    tdoc: TokenizedDocument, lexicon: Lexicon, window: int = 4
) -> TitleDetections:
    """Find person names introduced by title patterns.

    A ``pre`` trigger ("president", "queen") followed within the window by
    a run of >= 2 capitalized tokens yields a candidate; a ``post``
    trigger captures the run before it.  The title text is the trigger
    extended leftward over configured modifier terms ("former",
    nationality adjectives).  Candidates already in the person gazetteer
    contribute the title to that entry instead of a new-person report.
    """
    language = tdoc.doc.language
    pre = lexicon.titles.pre_for(language)
    post = lexicon.titles.post_for(language)
    modifiers = lexicon.titles.modifiers_for(language)
    tokens = tdoc.tokens
    lowers = [t.surface.lower() for t in tokens]
    n = len(tokens)

    def boundary_between(a: int, b: int) -> bool:
        """Sentence punctuation or the title/body break between two tokens."""
        gap = tdoc.text[tokens[a].end : tokens[b].start]
        return any(c in ".!?;:\n" for c in gap)

    def trigger_at(i: int, triggers: set[str]) -> int | None:
        """Longest trigger phrase starting at token i; returns end index (exclusive)."""
        best = None
        for j in range(i + 1, min(i + 4, n) + 1):
            if j > i + 1 and boundary_between(j - 2, j - 1):
                break
            if " ".join(lowers[i:j]) in triggers:
                best = j
        return best

    def capitalized_run(start: int) -> tuple[int, int] | None:
        """First run of >= 2 capitalized tokens beginning within the window."""
        for k in range(start, min(start + window, n)):
            if k > start and boundary_between(k - 1, k):
                return None
            if _is_capitalized(tokens[k].surface):
                end = k + 1
                while (
                    end < n
                    and _is_capitalized(tokens[end].surface)
                    and not boundary_between(end - 1, end)
                ):
                    end += 1
                if (
                    end < n
                    and lowers[end] in _NAME_SUFFIX_TOKENS
                    and not boundary_between(end - 1, end)
                ):
                    end += 1
                if end - k >= 2:
                    return k, end
                return None
        return None

    def title_span(trig_start: int, trig_end: int) -> str:
        s = trig_start
        while s > 0 and lowers[s - 1] in modifiers and not boundary_between(s - 1, s):
            s -= 1
        return tdoc.text[tokens[s].start : tokens[trig_end - 1].end]

    new_persons: list[tuple[str, str]] = []
    known_titles: list[tuple[int, str]] = []
    seen: set[tuple[str, str]] = set()

    def emit(name_start: int, name_end: int, title_text: str) -> None:
        name = tdoc.text[tokens[name_start].start : tokens[name_end - 1].end]
        key = (name, title_text)
        if key in seen:
            return
        seen.add(key)
        person_id = lexicon.person_id_for(name)
        if person_id is not None:
            known_titles.append((person_id, title_text))
        else:
            new_persons.append((name, title_text))

    i = 0
    while i < n:
        trig_end = trigger_at(i, pre)
        if trig_end is not None:
            run = capitalized_run(trig_end)
            if run is not None:
                emit(run[0], run[1], title_span(i, trig_end))
                i = run[1]
                continue
        trig_end = trigger_at(i, post)
        if trig_end is not None and i > 0:
            # name precedes the trigger: walk back over a capitalized run
            end = i
            start = i
            while (
                start > 0
                and _is_capitalized(tokens[start - 1].surface)
                and not boundary_between(start - 1, start)
            ):
                start -= 1
            if end - start >= 2 and not boundary_between(end - 1, end):
                emit(start, end, title_span(i, trig_end))
                i = trig_end
                continue
        i += 1

    return TitleDetections(new_persons=new_persons, known_person_titles=known_titles)
