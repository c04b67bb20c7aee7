//! Loading games, trees, automata and adaptation specs from files or
//! builtin names, and parsing the rational-valued command-line grids.

use std::fs;
use std::path::Path;

use enforcement::catalog::{self, Builtin};
use enforcement::dynamics::AdaptationSpec;
use enforcement::extensive_form::GameTree;
use enforcement::game_core::StageGame;
use enforcement::rational::parse_rational;
use enforcement::repeated::Automaton;
use enforcement::Rational;
use serde::de::DeserializeOwned;

use crate::CliError;

fn read_json<T: DeserializeOwned>(flag: &str, path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{flag} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let message = e.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.as_str(), |(m, _)| m);
        CliError::Input(format!("{}:{}:{}: {message}", path.display(), e.line(), e.column()))
    })
}

/// A value that names a builtin when no file by that name exists.
fn looks_like_builtin(source: &str) -> bool {
    !Path::new(source).exists() && !source.ends_with(".json")
}

pub fn load_game(source: &str) -> Result<StageGame, CliError> {
    if looks_like_builtin(source) {
        return match catalog::builtin(source) {
            Ok(Builtin::Stage(g)) => Ok(g),
            Ok(Builtin::Tree(_)) => Err(CliError::Input(format!(
                "--game `{source}`: builtin is a game tree; use it with --tree"
            ))),
            Err(e) => Err(CliError::Input(format!("--game `{source}`: {e}"))),
        };
    }
    read_json("--game", Path::new(source))
}

pub fn load_tree(source: &str) -> Result<GameTree, CliError> {
    if looks_like_builtin(source) {
        return match catalog::builtin(source) {
            Ok(Builtin::Tree(t)) => Ok(t),
            Ok(Builtin::Stage(_)) => Err(CliError::Input(format!(
                "--tree `{source}`: builtin is a stage game; use it with --game"
            ))),
            Err(e) => Err(CliError::Input(format!("--tree `{source}`: {e}"))),
        };
    }
    read_json("--tree", Path::new(source))
}

pub fn load_automaton(source: &str) -> Result<Automaton, CliError> {
    if looks_like_builtin(source) {
        return catalog::builtin_automaton(source)
            .map_err(|e| CliError::Input(format!("--automaton `{source}`: {e}")));
    }
    read_json("--automaton", Path::new(source))
}

pub fn load_spec(path: &Path) -> Result<AdaptationSpec, CliError> {
    let spec: AdaptationSpec = read_json("--spec", path)?;
    spec.validate()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(spec)
}

/// clap value parser for a single `p/q` rational.
pub fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Comma-separated rationals, e.g. `1/2,9/10,99/100`.
pub fn rational_list(text: &str) -> Result<Vec<Rational>, String> {
    let items: Vec<Rational> = text
        .split(',')
        .enumerate()
        .map(|(k, item)| parse_rational(item.trim()).map_err(|e| format!("item {}: {e}", k + 1)))
        .collect::<Result<_, _>>()?;
    Ok(items)
}

/// Comma-separated integers and inclusive ranges `a..=b`, e.g. `1,3..=5`.
pub fn integer_grid(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for (k, item) in text.split(',').map(str::trim).enumerate() {
        let bad = |what: &str| format!("item {} `{item}`: {what}", k + 1);
        if let Some((lo, hi)) = item.split_once("..=") {
            let lo: u32 = lo.trim().parse().map_err(|_| bad("not an integer range"))?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad("not an integer range"))?;
            if lo > hi {
                return Err(bad("empty range"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| bad("not a non-negative integer"))?);
        }
    }
    Ok(out)
}

/// `a0,a1` for the cost form `a0 + a1 * b`.
pub fn affine_arg(text: &str) -> Result<(Rational, Rational), String> {
    match rational_list(text)?.as_slice() {
        [a0, a1] => Ok((a0.clone(), a1.clone())),
        _ => Err("expected two coefficients `a0,a1`".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use enforcement::rational::rat;

    #[test]
    fn grids_parse() {
        assert_eq!(integer_grid("1,3..=5").unwrap(), vec![1, 3, 4, 5]);
        assert!(integer_grid("5..=3").is_err());
        assert!(integer_grid("two").is_err());
        assert_eq!(rational_list("1/2, 9/10").unwrap(), vec![rat(1, 2), rat(9, 10)]);
        let err = rational_list("1/2,0.9").unwrap_err();
        assert!(err.starts_with("item 2"), "{err}");
        assert_eq!(affine_arg("100,-1/2").unwrap(), (rat(100, 1), rat(-1, 2)));
    }
}
