"""CEFR-level annotation for WordNet senses, and contextual level classifiers.

The pipeline aligns WordNet sense glosses with CEFR-leveled learner
lexicon glosses through a pluggable seven-point similarity judge,
transfers levels onto matched senses, joins the result onto the SemCor
corpus, and trains/evaluates contextual lexical level classifiers.
"""

from .align import (
    AnnotatedWordNet,
    GlossPair,
    LevelAnnotation,
    OfflineJaccardJudge,
    RemoteJudge,
    SimilarityJudge,
    SimilarityVerdict,
    UnparseableVerdict,
    annotate_all,
    annotation_summary,
    enumerate_pairs,
    offline_judge_score,
    transfer_levels,
)
from .cache import StorageError, VerdictCache, verdict_key
from .chat import BackendError, ChatBackend, HttpChatBackend, StaticChatBackend
from .classifiers import (
    ClassifyRequest,
    DegenerateTraining,
    InsufficientExamples,
    Prediction,
    PrototypeModel,
    ShotSet,
    export_finetune,
    few_shot_classify,
    hybrid_classify,
    kb_classify,
    predict_prototype,
    sample_shots,
    train_prototype,
    zero_shot_classify,
)
from .embeddings import (
    EmbeddingProvider,
    HashedEmbeddingProvider,
    HttpEmbeddingProvider,
    PrecomputedEmbeddings,
    ProviderError,
)
from .errors import FormatError, LexiLevelError, MissingFile
from .evp import EvpLexicon, EvpSense, KnowledgeBase, SchemaError, build_kb, dump_evp, load_evp
from .levels import (
    LEVELS,
    CefrLevel,
    LemmaKey,
    NoLevelFound,
    PartOfSpeech,
    int_to_level,
    level_to_int,
    normalize_lemma,
    parse_level,
    render_level,
)
from .metrics import (
    ComplexRecord,
    ConfusionMatrix,
    CorrelationReport,
    DegenerateInput,
    EvalReport,
    LengthMismatch,
    adjacent_accuracy,
    confusion,
    correlate_complex,
    read_complex,
    score,
    spearman,
    split_examples,
)
from .semcor import (
    CorpusExample,
    DanglingKey,
    SemcorInstance,
    SemcorLoad,
    build_corpus,
    corpus_stats,
    evp_examples_to_corpus,
    load_corpus,
    load_semcor,
    write_corpus,
)
from .wordnet import (
    SynsetId,
    UnknownSenseKey,
    UnknownSynset,
    WnSense,
    WordNetStore,
    glosses_for,
    load_wordnet,
    neighbors,
    resolve_sense_key,
    synset_words,
)

__version__ = "0.1.0"
