//! The generated header declares every exported function.

const EXPORTED: &[&str] = &[
    "dd_last_error_message",
    "dd_sample_new",
    "dd_sample_free",
    "dd_sample_add",
    "dd_sample_total",
    "dd_sample_frequency",
    "dd_sample_generate",
    "dd_pmf",
    "dd_log_likelihood",
    "dd_fit",
    "dd_select",
    "dd_corpus_parse",
    "dd_corpus_free",
    "dd_corpus_len",
    "dd_corpus_sentence_len",
    "dd_corpus_distances",
    "dd_corpus_omega",
    "dd_omega_heads",
];

#[test]
fn header_lists_all_symbols() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/depdist.h")).unwrap();
    for f in EXPORTED {
        let declared = header.contains(&format!(" {f}(")) || header.contains(&format!("*{f}("));
        assert!(declared, "{f} missing from header");
    }
    for t in [
        "typedef struct DdSample DdSample;",
        "typedef struct DdCorpus DdCorpus;",
        "DD_STATUS_OK = 0",
    ] {
        assert!(header.contains(t), "{t}");
    }
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    assert_eq!(src.matches("#[no_mangle]").count(), EXPORTED.len());
}
