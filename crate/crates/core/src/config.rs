//! Line-oriented config format for systems and field libraries.
//!
//! ```text
//! [system]
//! name E-adjoint
//! charges F wh
//! generator b_x odd 1/2 F=-1 wh=2
//! contraction b_x c_xp 0 1
//! contraction c_xp b_x 0 1
//!
//! [fields]
//! Th_x = W(b_h, c_yp) - 2 W(b_x, c_hp)
//! ```
//!
//! `generator` lines name the parity, the weight, and any nonzero charges;
//! `contraction` lines give c_k(left, right) and must cover both argument
//! orders, exactly as the system constructor demands. Field lines are
//! expressions over earlier fields and the generators, evaluated in file
//! order. Export is canonical, so hashing the exported text identifies the
//! configuration.

use std::collections::BTreeMap;

use crate::catalog::FieldLibrary;
use crate::error::{Error, Result};
use crate::expr;
use crate::scalar;
use crate::state::State;
use crate::system::{FreeFieldSystem, GeneratorSpec, Parity};
use crate::wick::Engine;

#[derive(Debug, Clone)]
pub struct ConfigDoc {
    pub system: FreeFieldSystem,
    /// Field definitions in declaration order: (name, expression text).
    pub fields: Vec<(String, String)>,
}

pub fn parse_config(text: &str) -> Result<ConfigDoc> {
    enum Section {
        None,
        System,
        Fields,
    }
    let fail = |line: usize, message: &str| Error::Config {
        line,
        message: message.to_string(),
    };

    let mut section = Section::None;
    let mut name = String::from("custom");
    let mut charge_names: Vec<String> = Vec::new();
    let mut generators: Vec<GeneratorSpec> = Vec::new();
    let mut contractions: Vec<(String, String, i64, scalar::Scalar)> = Vec::new();
    let mut fields: Vec<(String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.split_once('#') {
            Some((head, _)) => head.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        match line {
            "[system]" => {
                section = Section::System;
                continue;
            }
            "[fields]" => {
                section = Section::Fields;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(fail(lineno, "content before any section header")),
            Section::System => {
                let mut words = line.split_whitespace();
                let keyword = words.next().unwrap_or_default();
                match keyword {
                    "name" => {
                        name = words.collect::<Vec<_>>().join(" ");
                        if name.is_empty() {
                            return Err(fail(lineno, "name line needs a value"));
                        }
                    }
                    "charges" => {
                        charge_names = words.map(str::to_string).collect();
                    }
                    "generator" => {
                        let gen_name = words
                            .next()
                            .ok_or_else(|| fail(lineno, "generator needs a name"))?;
                        let parity = match words.next() {
                            Some("even") => Parity::Even,
                            Some("odd") => Parity::Odd,
                            _ => return Err(fail(lineno, "parity must be `even` or `odd`")),
                        };
                        let weight = words
                            .next()
                            .and_then(scalar::parse)
                            .ok_or_else(|| fail(lineno, "generator needs a rational weight"))?;
                        let mut charges = vec![0i64; charge_names.len()];
                        for assign in words {
                            let (cname, value) = assign
                                .split_once('=')
                                .ok_or_else(|| fail(lineno, "charges look like `F=-1`"))?;
                            let idx = charge_names
                                .iter()
                                .position(|c| c == cname)
                                .ok_or_else(|| fail(lineno, "charge not declared"))?;
                            charges[idx] = value
                                .parse()
                                .map_err(|_| fail(lineno, "charge value must be an integer"))?;
                        }
                        generators.push(GeneratorSpec {
                            name: gen_name.to_string(),
                            parity,
                            weight,
                            charges,
                        });
                    }
                    "contraction" => {
                        let parts: Vec<&str> = words.collect();
                        if parts.len() != 4 {
                            return Err(fail(lineno, "contraction needs `left right k c`"));
                        }
                        let k: i64 = parts[2]
                            .parse()
                            .map_err(|_| fail(lineno, "contraction order must be an integer"))?;
                        let c = scalar::parse(parts[3])
                            .ok_or_else(|| fail(lineno, "contraction value must be rational"))?;
                        contractions.push((parts[0].to_string(), parts[1].to_string(), k, c));
                    }
                    _ => return Err(fail(lineno, "unknown system line")),
                }
            }
            Section::Fields => {
                let (fname, body) = line
                    .split_once('=')
                    .ok_or_else(|| fail(lineno, "field lines look like `name = expr`"))?;
                let fname = fname.trim();
                let body = body.trim();
                if fname.is_empty() || fname.contains(char::is_whitespace) {
                    return Err(fail(lineno, "field name must be a single word"));
                }
                expr::parse(body).map_err(|e| fail(lineno, &format!("bad expression: {e}")))?;
                fields.push((fname.to_string(), body.to_string()));
            }
        }
    }

    let system = FreeFieldSystem::new(&name, generators, charge_names, contractions)?;
    Ok(ConfigDoc { system, fields })
}

pub fn export_system(sys: &FreeFieldSystem) -> String {
    let mut out = String::from("[system]\n");
    out.push_str(&format!("name {}\n", sys.name));
    if !sys.charge_names.is_empty() {
        out.push_str(&format!("charges {}\n", sys.charge_names.join(" ")));
    }
    for g in &sys.generators {
        let parity = if g.parity.is_odd() { "odd" } else { "even" };
        let mut line = format!("generator {} {parity} {}", g.name, scalar::render(&g.weight));
        for (cname, v) in sys.charge_names.iter().zip(&g.charges) {
            if *v != 0 {
                line.push_str(&format!(" {cname}={v}"));
            }
        }
        line.push('\n');
        out.push_str(&line);
    }
    for (l, r, k, c) in sys.all_contractions() {
        out.push_str(&format!(
            "contraction {} {} {k} {}\n",
            sys.gen_name(l),
            sys.gen_name(r),
            scalar::render(c)
        ));
    }
    out
}

pub fn export_doc(doc: &ConfigDoc) -> String {
    let mut out = export_system(&doc.system);
    if !doc.fields.is_empty() {
        out.push_str("\n[fields]\n");
        for (name, body) in &doc.fields {
            out.push_str(&format!("{name} = {body}\n"));
        }
    }
    out
}

/// Canonical config text of a built-in library: the system plus every
/// field formula in build order.
pub fn export_library(lib: &FieldLibrary) -> String {
    let fields = lib
        .names()
        .iter()
        .map(|n| {
            let formula = lib.formula(n).expect("library fields carry formulas");
            (n.clone(), formula.to_string())
        })
        .collect();
    export_doc(&ConfigDoc {
        system: lib.system.clone(),
        fields,
    })
}

/// Evaluates the field definitions in order. Each expression sees all
/// earlier fields plus the raw generators.
pub fn evaluate_fields(
    engine: &Engine,
    fields: &[(String, String)],
) -> Result<BTreeMap<String, State>> {
    let mut done: BTreeMap<String, State> = BTreeMap::new();
    for (name, body) in fields {
        let resolve = |n: &str| -> Option<State> {
            if let Some(s) = done.get(n) {
                return Some(s.clone());
            }
            engine.gen_mode_apply(n, -1, &State::vacuum()).ok()
        };
        let value = expr::eval_str(body, engine, &resolve)?;
        done.insert(name.clone(), value);
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SystemCase;

    #[test]
    fn library_export_parses_back_to_the_same_text() {
        for case in [SystemCase::AdjointE, SystemCase::OdakeOriginal] {
            let lib = FieldLibrary::build(case).unwrap();
            let text = export_library(&lib);
            let doc = parse_config(&text).unwrap();
            assert_eq!(export_doc(&doc), text);
            let engine = Engine::new(&doc.system);
            let values = evaluate_fields(&engine, &doc.fields).unwrap();
            for name in lib.names() {
                assert_eq!(values[name], *lib.get(name).unwrap(), "{case:?} {name}");
            }
        }
    }

    #[test]
    fn config_errors_carry_line_numbers() {
        let bad = "[system]\nname x\ngenerator a maybe 1\n";
        match parse_config(bad) {
            Err(Error::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected config error, got {other:?}"),
        }
        match parse_config("stray line\n") {
            Err(Error::Config { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected config error, got {other:?}"),
        }
    }
}
