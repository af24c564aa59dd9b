"""Commit-message analysis: sentence splitting, verb lemmatization, and
leading verb + direct-object extraction.

Everything here is deliberately rule-based and dependency-free. The rules
are documented on each function because they are the contract: exploratory
statistics built on top of them are only comparable when the rules stay
fixed.
"""

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .corpus import Commit

# Lemmas every lexicon recognizes, whatever else the caller loads. These are
# the verbs the group taxonomy in verbgroups.py is built from.
CORE_LEMMAS = frozenset(
    {
        "add", "create", "make", "implement",
        "fix",
        "remove",
        "update", "upgrade",
        "use",
        "move", "change",
        "prepare",
        "improve",
        "ignore",
        "handle",
        "rename",
        "allow",
        "set",
        "revert",
        "replace",
    }
)

# Tokens that end a direct-object span (prepositions and conjunctions).
STOP_WORDS = frozenset(
    {
        "to", "for", "in", "on", "at", "with", "from", "by", "of",
        "and", "or", "so", "when", "which", "that", "because",
    }
)

OBJECT_TOKEN_CAP = 6

_SENTENCE_TERMINATORS = frozenset(".!?")
_BULLET_MARKERS = ("-", "*")
_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")

# Irregular inflections seen at the head of commit messages. Regular
# suffix stripping below covers everything else.
_IRREGULAR = {
    "am": "be", "are": "be", "is": "be", "was": "be", "were": "be",
    "been": "be", "being": "be",
    "began": "begin", "begun": "begin",
    "bought": "buy",
    "brought": "bring",
    "built": "build", "rebuilt": "rebuild",
    "came": "come",
    "caught": "catch",
    "chose": "choose", "chosen": "choose",
    "dealt": "deal",
    "did": "do", "does": "do", "done": "do",
    "drew": "draw", "drawn": "draw",
    "drove": "drive", "driven": "drive",
    "fell": "fall", "fallen": "fall",
    "felt": "feel",
    "flew": "fly", "flown": "fly",
    "forgot": "forget", "forgotten": "forget",
    "found": "find",
    "froze": "freeze", "frozen": "freeze",
    "gave": "give", "given": "give",
    "goes": "go", "went": "go", "gone": "go",
    "got": "get", "gotten": "get",
    "grew": "grow", "grown": "grow",
    "had": "have", "has": "have",
    "held": "hold",
    "hid": "hide", "hidden": "hide",
    "kept": "keep",
    "knew": "know", "known": "know",
    "laid": "lay",
    "led": "lead",
    "left": "leave",
    "lent": "lend",
    "lost": "lose",
    "made": "make",
    "meant": "mean",
    "met": "meet",
    "overrode": "override", "overridden": "override",
    "paid": "pay",
    "ran": "run", "reran": "rerun",
    "redid": "redo", "redone": "redo",
    "rewrote": "rewrite", "rewritten": "rewrite",
    "rose": "rise", "risen": "rise",
    "said": "say",
    "sat": "sit",
    "saw": "see", "seen": "see",
    "sent": "send", "resent": "resend",
    "set": "set", "setting": "set",
    "shook": "shake", "shaken": "shake",
    "shot": "shoot",
    "showed": "show", "shown": "show",
    "slept": "sleep",
    "sold": "sell",
    "spent": "spend",
    "spoke": "speak", "spoken": "speak",
    "stood": "stand", "understood": "understand",
    "stuck": "stick",
    "swam": "swim", "swum": "swim",
    "swept": "sweep",
    "taught": "teach",
    "thought": "think", "rethought": "rethink",
    "threw": "throw", "thrown": "throw",
    "told": "tell",
    "took": "take", "taken": "take",
    "tore": "tear", "torn": "tear",
    "undid": "undo", "undone": "undo",
    "woke": "wake", "woken": "wake",
    "won": "win",
    "wore": "wear", "worn": "wear",
    "wound": "wind", "unwound": "unwind", "rewound": "rewind",
    "withdrew": "withdraw", "withdrawn": "withdraw",
    "wrote": "write",
}


@dataclass(frozen=True)
class VerbLexicon:
    """Verb lemmas recognized when scanning message-leading tokens.

    Whatever the caller supplies, the core lemma set is always included,
    so group labeling keeps working even with a stripped-down lexicon.
    """

    lemmas: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        merged = frozenset(lemma.lower() for lemma in self.lemmas) | CORE_LEMMAS
        object.__setattr__(self, "lemmas", merged)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.lemmas

    def __len__(self) -> int:
        return len(self.lemmas)

    @classmethod
    def from_file(cls, path) -> "VerbLexicon":
        """Load one lowercase lemma per line; '#' starts a comment."""
        lemmas = []
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                entry = line.split("#", 1)[0].strip()
                if entry:
                    lemmas.append(entry.lower())
        return cls(frozenset(lemmas))

    @classmethod
    def default(cls) -> "VerbLexicon":
        return _default_lexicon()


@lru_cache(maxsize=1)
def _default_lexicon() -> VerbLexicon:
    text = resources.files("commitverb").joinpath("data/common_verbs.txt").read_text("utf-8")
    lemmas = []
    for line in text.splitlines():
        entry = line.split("#", 1)[0].strip()
        if entry:
            lemmas.append(entry.lower())
    return VerbLexicon(frozenset(lemmas))


@dataclass(frozen=True)
class SentenceSplit:
    """Ordered sentences of one message, trimmed but otherwise verbatim."""

    sentences: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def split_sentences(message: str) -> SentenceSplit:
    """Split a commit message into sentences.

    Rules: blank lines separate sentences; a bullet line (leading '-' or
    '*') is one sentence on its own; within a block of ordinary lines,
    '.', '!', or '?' ends a sentence only when followed by whitespace or
    end of text, so dots inside tokens like "v1.2" never split. All
    non-whitespace characters of the message survive into the output.
    """
    sentences: list[str] = []
    buffer: list[str] = []

    def flush():
        if buffer:
            sentences.extend(_split_block("\n".join(buffer)))
            buffer.clear()

    for line in message.split("\n"):
        stripped = line.strip()
        if not stripped:
            flush()
        elif stripped.startswith(_BULLET_MARKERS):
            flush()
            sentences.append(stripped)
        else:
            buffer.append(line)
    flush()
    return SentenceSplit(tuple(sentences))


def _split_block(text: str) -> list[str]:
    pieces: list[str] = []
    start = 0
    for i, ch in enumerate(text):
        if ch in _SENTENCE_TERMINATORS and (i + 1 == len(text) or text[i + 1].isspace()):
            piece = text[start : i + 1].strip()
            if piece:
                pieces.append(piece)
            start = i + 1
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def lemmatize_verb(token: str, lexicon: VerbLexicon | None = None) -> str:
    """Reduce one token to a verb lemma with suffix heuristics.

    After lowercasing: irregular forms map through a fixed table; tokens
    already in the recognition lexicon pass through unchanged (protects
    lemmas like "need" or "bring" from suffix stripping); then "-ies" ->
    "y", "-es" after a sibilant when the stem is a known lemma, plain
    "-s" drop, and "-ing"/"-ed" stripping. Stripped stems are repaired by
    undoubling a doubled final consonant or restoring a final "e" when
    that lands on a known lemma ("creating" -> "create"). Tokens matching
    no rule come back unchanged.
    """
    lex = lexicon if lexicon is not None else VerbLexicon.default()
    t = token.lower()
    if t in _IRREGULAR:
        return _IRREGULAR[t]
    if t in lex:
        return t
    if t.endswith("ies") and len(t) >= 5:
        return t[:-3] + "y"
    if t.endswith("es") and len(t) >= 4:
        stem = t[:-2]
        if stem.endswith(_SIBILANT_ENDINGS) and stem in lex:
            return stem
    if t.endswith("s") and not t.endswith("ss") and len(t) >= 3:
        return t[:-1]
    if t.endswith("ing") and len(t) >= 5:
        return _repair_stem(t[:-3], lex)
    if t.endswith("ed") and len(t) >= 4:
        return _repair_stem(t[:-2], lex)
    return t


def _repair_stem(stem: str, lex: VerbLexicon) -> str:
    if stem in lex:
        return stem
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[:-1] in lex:
        return stem[:-1]
    if stem + "e" in lex:
        return stem + "e"
    return stem


@dataclass(frozen=True)
class VerbObjectPhrase:
    """Leading verb (lemmatized) plus the raw direct-object span."""

    verb_lemma: str
    object_text: str


def extract_leading_verb_object(
    sentence: str, lexicon: VerbLexicon | None = None
) -> VerbObjectPhrase | None:
    """Find a leading verb and its direct object in one sentence.

    The sentence is tokenized on whitespace. If the first token's lemma is
    in the lexicon, the object is the following tokens up to the first
    stop-list word, the first sentence terminator, or six tokens,
    whichever comes first; a leading determiner stays in the span. Returns
    None when the head is not a recognized verb or the object is empty.
    """
    lex = lexicon if lexicon is not None else VerbLexicon.default()
    tokens = sentence.split()
    if not tokens:
        return None
    head = tokens[0].rstrip(".,:;!?")
    if not head:
        return None
    lemma = lemmatize_verb(head, lex)
    if lemma not in lex:
        return None

    object_tokens: list[str] = []
    for token in tokens[1:]:
        if len(object_tokens) == OBJECT_TOKEN_CAP:
            break
        bare = token.rstrip(".!?")
        terminated = bare != token
        if bare.lower() in STOP_WORDS:
            break
        if bare:
            object_tokens.append(bare)
        if terminated:
            break
    if not object_tokens:
        return None
    return VerbObjectPhrase(lemma, " ".join(object_tokens))


@dataclass(frozen=True)
class CorpusStats:
    """Exploratory statistics over a filtered corpus."""

    messages: int
    phrases: int
    sentence_histogram: dict[int, int]
    verb_histogram: dict[str, int]

    @property
    def verb_object_fraction(self) -> float:
        """Share of messages whose first sentence yields a verb+object."""
        if self.messages == 0:
            return 0.0
        return self.phrases / self.messages

    def to_dict(self) -> dict:
        """JSON-ready form; histogram keys become strings."""
        return {
            "messages": self.messages,
            "phrases": self.phrases,
            "verb_object_fraction": self.verb_object_fraction,
            "sentence_histogram": {
                str(k): self.sentence_histogram[k] for k in sorted(self.sentence_histogram)
            },
            "verb_histogram": {
                k: self.verb_histogram[k] for k in sorted(self.verb_histogram)
            },
        }


def corpus_stats(commits: Iterable[Commit], lexicon: VerbLexicon | None = None) -> CorpusStats:
    """Sentence-count and leading-verb histograms over a corpus.

    Verb+object detection looks at the first sentence of each message
    only; the verb histogram counts detected phrases by lemma.
    """
    lex = lexicon if lexicon is not None else VerbLexicon.default()
    sentence_histogram: Counter[int] = Counter()
    verb_histogram: Counter[str] = Counter()
    messages = 0
    phrases = 0
    for commit in commits:
        split = split_sentences(commit.message)
        messages += 1
        sentence_histogram[len(split)] += 1
        if split.sentences:
            phrase = extract_leading_verb_object(split.sentences[0], lex)
            if phrase is not None:
                phrases += 1
                verb_histogram[phrase.verb_lemma] += 1
    return CorpusStats(messages, phrases, dict(sentence_histogram), dict(verb_histogram))


def load_lexicon(path=None) -> VerbLexicon:
    """Lexicon from a file, or the bundled default when path is None."""
    if path is None:
        return VerbLexicon.default()
    return VerbLexicon.from_file(path)
