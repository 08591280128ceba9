use std::collections::HashMap;
use std::io::BufRead;

use super::DepTree;
use crate::error::{ConlluError, TreeError};

/// Trees parsed from one CoNLL-U stream together with the sentences that
/// failed structural validation.
#[derive(Debug, Default)]
pub struct ParsedCorpus {
    pub trees: Vec<DepTree>,
    pub rejected: Vec<RejectedSentence>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectedSentence {
    /// 0-based index of the sentence block in the input.
    pub index: usize,
    /// Line on which the sentence block starts.
    pub line: usize,
    pub sent_id: Option<String>,
    pub error: TreeError,
}

struct Token {
    id: u32,
    head: String,
}

#[derive(Default)]
struct Block {
    start_line: usize,
    sent_id: Option<String>,
    tokens: Vec<Token>,
}

/// Parses CoNLL-U text. Multiword range lines (`3-4`) and empty nodes
/// (`5.1`) are skipped, the remaining tokens renumbered `1..n` in order of
/// appearance and HEAD values remapped.
pub fn parse_conllu<R: BufRead>(reader: R) -> Result<ParsedCorpus, ConlluError> {
    let mut corpus = ParsedCorpus::default();
    let mut block = Block::default();
    let mut n_blocks = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !block.tokens.is_empty() {
                finish_block(std::mem::take(&mut block), n_blocks, &mut corpus);
                n_blocks += 1;
            }
            block = Block::default();
            continue;
        }
        if block.tokens.is_empty() && block.start_line == 0 {
            block.start_line = lineno;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("sent_id") {
                block.sent_id = Some(id.trim_start_matches([' ', '=']).trim().to_string());
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::ColumnCount {
                line: lineno,
                found: cols.len(),
            });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let id: u32 = id.parse().map_err(|_| ConlluError::BadId {
            line: lineno,
            id: id.to_string(),
        })?;
        block.tokens.push(Token {
            id,
            head: cols[6].to_string(),
        });
    }
    if !block.tokens.is_empty() {
        finish_block(block, n_blocks, &mut corpus);
    }
    Ok(corpus)
}

fn finish_block(block: Block, index: usize, corpus: &mut ParsedCorpus) {
    match build_tree(&block.tokens) {
        Ok(tree) => corpus.trees.push(tree),
        Err(error) => corpus.rejected.push(RejectedSentence {
            index,
            line: block.start_line,
            sent_id: block.sent_id,
            error,
        }),
    }
}

fn build_tree(tokens: &[Token]) -> Result<DepTree, TreeError> {
    let position: HashMap<u32, usize> = tokens.iter().enumerate().map(|(i, t)| (t.id, i + 1)).collect();
    let mut heads = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let bad = || TreeError::BadHead {
            token: i + 1,
            head: t.head.clone(),
        };
        let raw: u32 = t.head.parse().map_err(|_| bad())?;
        if raw == 0 {
            heads.push(0);
        } else {
            heads.push(*position.get(&raw).ok_or_else(bad)?);
        }
    }
    DepTree::new(heads)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, form: &str, head: &str) -> String {
        format!("{id}\t{form}\t_\t_\t_\t_\t{head}\tdep\t_\t_\n")
    }

    #[test]
    fn figure_one_sentence() {
        let mut text = String::from("# sent_id = fig1\n# text = John gave Bill the painting that Mary hated\n");
        for (i, (w, h)) in [
            ("John", 2),
            ("gave", 0),
            ("Bill", 2),
            ("the", 5),
            ("painting", 2),
            ("that", 8),
            ("Mary", 8),
            ("hated", 5),
        ]
        .iter()
        .enumerate()
        {
            text.push_str(&row(&(i + 1).to_string(), w, &h.to_string()));
        }
        text.push('\n');
        let c = parse_conllu(text.as_bytes()).unwrap();
        assert_eq!(c.trees.len(), 1);
        let mut d = c.trees[0].distances();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2, 3, 3]);
    }

    #[test]
    fn single_token() {
        let c = parse_conllu(row("1", "Hi", "0").as_bytes()).unwrap();
        assert_eq!(c.trees[0].heads(), &[0]);
        assert!(c.trees[0].distances().is_empty());
    }

    #[test]
    fn range_and_empty_nodes_are_skipped() {
        let text = [
            row("1", "Vamos", "0"),
            row("2", "a", "3"),
            row("3-4", "del", "_"),
            row("3", "de", "5"),
            row("4", "el", "5"),
            row("4.1", "ghost", "_"),
            row("5", "mar", "1"),
        ]
        .concat();
        let c = parse_conllu(text.as_bytes()).unwrap();
        assert_eq!(c.trees.len(), 1);
        assert_eq!(c.trees[0].heads(), &[0, 3, 5, 5, 1]);
    }

    #[test]
    fn renumbers_after_gaps() {
        // ids 1, 2, 4 after a dropped line: head 4 maps to position 3
        let text = [row("1", "a", "4"), row("2", "b", "4"), row("4", "c", "0")].concat();
        let c = parse_conllu(text.as_bytes()).unwrap();
        assert_eq!(c.trees[0].heads(), &[3, 3, 0]);
    }

    #[test]
    fn wrong_column_count_reports_line() {
        let text = format!("# c\n{}1\tx\t_\n", row("1", "a", "0"));
        match parse_conllu(text.as_bytes()) {
            Err(ConlluError::ColumnCount { line: 3, found: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors_skip_sentence() {
        let text = format!(
            "# sent_id = bad\n{}{}\n{}\n{}{}\n",
            row("1", "a", "0"),
            row("2", "b", "0"),
            row("1", "ok", "0"),
            row("1", "x", "0"),
            row("2", "y", "7"),
        );
        let c = parse_conllu(text.as_bytes()).unwrap();
        assert_eq!(c.trees.len(), 1);
        assert_eq!(c.rejected.len(), 2);
        assert_eq!(c.rejected[0].error, TreeError::RootCount(2));
        assert_eq!(c.rejected[0].sent_id.as_deref(), Some("bad"));
        assert_eq!(c.rejected[0].line, 1);
        assert!(matches!(c.rejected[1].error, TreeError::BadHead { token: 2, .. }));
        assert_eq!(c.rejected[1].index, 2);
    }

    #[test]
    fn head_to_skipped_token_is_structural() {
        let text = [row("1", "a", "0"), row("2", "b", "1.1"), row("1.1", "e", "_")].concat();
        let c = parse_conllu(text.as_bytes()).unwrap();
        assert!(c.trees.is_empty());
        assert!(matches!(c.rejected[0].error, TreeError::BadHead { .. }));
    }
}
