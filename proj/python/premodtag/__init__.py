"""Corpus annotation and evaluation toolkit for pre-orthographic French.

Thin Python layer over the C++ core: TSV corpus I/O, rule-based tokenization,
authority-list validation, glyph augmentation, deterministic splitting, the
baseline tagger/lemmatizer, stratified evaluation and the spelling-variation
robustness harness.
"""

from premodtag._premodtag import (  # noqa: F401
    AnnotatedToken,
    Corpus,
    Document,
    Error,
    EvalReport,
    Lexicon,
    PairResult,
    RobustnessReport,
    Sentence,
    StratumScore,
    TaggerModel,
    Tagset,
    ValidationReport,
    VariantPair,
    __version__,
    apply_suffix_rules,
    augment,
    charset_inventory,
    evaluate,
    extract_pairs,
    lemma_valid,
    load_lexicon,
    load_model,
    load_tagset,
    nfkd,
    nfkd_normalize,
    read_tsv,
    read_tsv_string,
    run_robustness,
    sample_ood,
    save_model,
    split,
    tag,
    to_tsv,
    tokenize,
    tokenize_corpus,
    top_confusions,
    train,
    validate,
    write_tsv,
)
