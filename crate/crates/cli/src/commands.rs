use demkit::demushkin::{normalize_relator, retraction_witness, subgroup_rank, Constraint, NormalizationResult};
use demkit::howson::{self, HowsonReport};
use demkit::magnus::{analyze, demushkin_relator, expand, FreeWord};
use demkit::oracle::{exhaustive_isotropic_max, random_congruence_scramble, EnumerationBudget};
use demkit::symplectic::{
    complete_isotropic, is_nondegenerate, lift_basis, max_isotropic_dim_bruteforce, skew_normal_form,
    symplectic_basis_field, SymplecticBasis,
};
use demkit::LocalRing;
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::json::*;
use crate::{Cli, Command, DemushkinCmd, FormCmd, HowsonCmd, Input, RelatorCmd, RetractionCmd};

pub fn run(cli: &Cli, read: &dyn Fn(&Input) -> CliResult<Value>) -> CliResult<Value> {
    match &cli.command {
        Command::Form { cmd } => form(cli, cmd, read),
        Command::Relator { cmd } => relator(cli, cmd, read),
        Command::Demushkin { cmd: DemushkinCmd::Rank { d, index } } => {
            Ok(json!({"rank": big(&BigInt::from(subgroup_rank(*d, *index)?))}))
        }
        Command::Howson { cmd } => howson_cmd(cli, cmd),
        Command::Retraction { cmd: RetractionCmd::Witness(input) } => witness(cli, &read(input)?),
    }
}

fn budget(cli: &Cli) -> CliResult<EnumerationBudget> {
    Ok(EnumerationBudget::new(cli.budget.unwrap_or(EnumerationBudget::DEFAULT))?)
}

fn basis_value(basis: &SymplecticBasis) -> Value {
    let ring = basis.form().ring();
    object(vec![
        ("ring", ring_value(ring)),
        ("matrix", rows(basis.form().gram())),
        ("basis", json!(basis.vectors())),
        ("transform", rows(&basis.to_matrix())),
    ])
}

fn form(cli: &Cli, cmd: &FormCmd, read: &dyn Fn(&Input) -> CliResult<Value>) -> CliResult<Value> {
    match cmd {
        FormCmd::Check(input) => {
            let f = form_of(&read(input)?, cli.p, cli.k)?;
            Ok(object(vec![
                ("ring", ring_value(f.ring())),
                ("dim", json!(f.dim())),
                ("det_mod_p", json!(f.gram().det_mod_p())),
                ("nondegenerate", json!(is_nondegenerate(&f))),
            ]))
        }
        FormCmd::NormalForm(input) => {
            let f = form_of(&read(input)?, cli.p, cli.k)?;
            let nf = skew_normal_form(&f)?;
            Ok(object(vec![
                ("ring", ring_value(f.ring())),
                ("transform", rows(&nf.transform)),
                ("blocks", json!(nf.blocks.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())),
                ("matrix", rows(&nf.block_matrix())),
            ]))
        }
        FormCmd::CompleteIsotropic(input) => {
            let doc = read(input)?;
            let f = form_of(&doc, cli.p, cli.k)?;
            let sub = subspace_of(field(&doc, "subspace")?, f.ring(), f.dim())?;
            let idx = opt_u64(&doc, "distinguished")?.unwrap_or(0) as usize;
            Ok(basis_value(&complete_isotropic(&f, &sub, idx)?))
        }
        FormCmd::Lift(input) => {
            let doc = read(input)?;
            let f = form_of(&doc, cli.p, cli.k)?;
            let residue = f.ring().residue_field();
            let reduced = f.reduce_mod_p();
            let d = match doc.get("field_basis").or_else(|| doc.get("basis")) {
                Some(v) => SymplecticBasis::new(reduced, vectors(v, residue, "field_basis")?),
                None => symplectic_basis_field(&reduced)?,
            };
            let b1 = match doc.get("b1") {
                Some(v) => vector(v, f.ring(), "b1")?,
                None if d.vectors().len() >= 2 => d.b(0).to_vec(),
                None => return Err(malformed("empty field basis")),
            };
            Ok(basis_value(&lift_basis(&f, &b1, &d)?))
        }
        FormCmd::IsotropicMax(input) => {
            let f = form_of(&read(input)?, cli.p, cli.k)?;
            Ok(object(vec![
                ("ring", ring_value(f.ring())),
                ("max_isotropic_dim", json!(max_isotropic_dim_bruteforce(&f)?)),
                ("oracle_max_isotropic_dim", json!(exhaustive_isotropic_max(&f, &budget(cli)?)?)),
            ]))
        }
        FormCmd::Scramble(input) => {
            let f = form_of(&read(input)?, cli.p, cli.k)?;
            let (g, p) = random_congruence_scramble(&f, cli.seed);
            Ok(object(vec![
                ("ring", ring_value(f.ring())),
                ("seed", json!(cli.seed)),
                ("matrix", rows(g.gram())),
                ("transform", rows(&p)),
            ]))
        }
    }
}

fn prime_of(doc: &Value, flag: Option<u64>) -> CliResult<u64> {
    if let Some(p) = opt_u64(doc, "p")? {
        return Ok(p);
    }
    if let Some(r) = doc.get("ring") {
        return as_u64(field(r, "p")?, "ring.p");
    }
    flag.ok_or_else(|| malformed("no prime: supply `p` or --p"))
}

fn relator_of(doc: &Value) -> CliResult<(Vec<String>, FreeWord)> {
    let alphabet = alphabet_of(doc)?;
    let word = word_of(field(doc, "word")?, &alphabet)?;
    Ok((alphabet, word))
}

fn relator(cli: &Cli, cmd: &RelatorCmd, read: &dyn Fn(&Input) -> CliResult<Value>) -> CliResult<Value> {
    match cmd {
        RelatorCmd::Build { t, gamma, delta } => {
            let r = demushkin_relator(*t, gamma, delta)?;
            let alphabet: Vec<String> = (1..=*t).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
            Ok(object(vec![("word", word_value(&r, &alphabet)), ("alphabet", json!(alphabet))]))
        }
        RelatorCmd::Expand(input) => {
            let (alphabet, w) = relator_of(&read(input)?)?;
            let m = expand(&w);
            Ok(object(vec![
                ("alphabet", json!(alphabet)),
                ("linear", bigs(&m.linear)),
                ("quadratic", Value::Array(m.quadratic.iter().map(|r| bigs(r)).collect())),
            ]))
        }
        RelatorCmd::Analyze(input) => {
            let doc = read(input)?;
            let p = prime_of(&doc, cli.p)?;
            let (alphabet, w) = relator_of(&doc)?;
            let a = analyze(&w, p)?;
            let t = if a.is_demushkin_candidate { json!(alphabet.len() / 2) } else { Value::Null };
            Ok(object(vec![
                ("alphabet", json!(alphabet)),
                ("p", json!(p)),
                ("ring", ring_value(LocalRing::field(p)?)),
                ("q", big(&a.q.value(p))),
                ("q_exponent", json!(a.q.exponent())),
                ("linear", bigs(&a.magnus.linear)),
                ("linear_divisible", json!(a.linear_divisible)),
                ("matrix", rows(&a.pairing)),
                ("nondegenerate", json!(a.nondegenerate)),
                ("is_demushkin_candidate", json!(a.is_demushkin_candidate)),
                ("t", t),
            ]))
        }
        RelatorCmd::Normalize(input) => {
            let doc = read(input)?;
            let p = prime_of(&doc, cli.p)?;
            let (alphabet, w) = relator_of(&doc)?;
            let precision = match opt_u64(&doc, "precision_k")? {
                Some(k) => Some(u32::try_from(k).map_err(|_| malformed("`precision_k` out of range"))?),
                None => cli.k,
            };
            let constraint = match doc.get("constraint") {
                None | Some(Value::Null) => None,
                Some(c) => Some(Constraint {
                    subspace: subspace_of(field(c, "subspace")?, LocalRing::field(p)?, alphabet.len())?,
                    distinguished: opt_u64(c, "distinguished")?.map(|i| i as usize),
                }),
            };
            let res = normalize_relator(&w, p, precision, constraint.as_ref())?;
            Ok(normalization_value(&res, &alphabet))
        }
    }
}

fn normalization_value(res: &NormalizationResult, alphabet: &[String]) -> Value {
    let t = res.target.t;
    let new_alphabet: Vec<String> = (1..=t).flat_map(|i| [format!("w{i}"), format!("z{i}")]).collect();
    let target = object(vec![
        ("q", big(&res.target.q.value(res.p))),
        ("t", json!(t)),
        ("gamma_residue", big(&res.target.gamma_residue)),
        ("delta_residue", big(&res.target.delta_residue)),
        ("residue_modulus", res.target.residue_modulus.as_ref().map_or(Value::Null, big)),
    ]);
    let v = &res.verification;
    object(vec![
        ("alphabet", json!(alphabet)),
        ("new_alphabet", json!(new_alphabet)),
        ("p", json!(res.p)),
        ("precision_k", json!(res.precision_k)),
        ("ring", ring_value(res.substitution.ring())),
        ("substitution", rows(&res.substitution)),
        ("dual_basis", rows(&res.dual_basis)),
        ("target", target),
        ("transformed_linear", bigs(&res.transformed_linear)),
        ("transformed_pairing", rows(&res.transformed_pairing)),
        ("distinguished", json!(res.distinguished)),
        (
            "verification",
            json!({
                "pairing_standard": v.pairing_standard,
                "linear_normalized": v.linear_normalized,
                "constraint_respected": v.constraint_respected,
                "lifted_basis_symplectic": v.lifted_basis_symplectic,
            }),
        ),
    ])
}

fn report_value(r: &HowsonReport) -> Value {
    let chain = |steps: &[howson::ChainStep]| -> Value {
        Value::Array(
            steps
                .iter()
                .map(|s| {
                    json!({
                        "label": s.label,
                        "expression": s.expression,
                        "relation": s.relation.symbol(),
                        "value": ubig(&s.value),
                    })
                })
                .collect(),
        )
    };
    object(vec![
        ("p", json!(r.p)),
        ("dG", json!(r.d_g)),
        ("dA", json!(r.d_a)),
        ("dB", json!(r.d_b)),
        ("joint_index", ubig(&r.joint_index)),
        ("case", json!(r.case.name())),
        ("n", json!(r.n)),
        ("dA0_bound", ubig(&r.d_a0_bound)),
        ("dB0_bound", ubig(&r.d_b0_bound)),
        ("dC_bound", ubig(&r.d_c_bound)),
        ("open_rank", ubig(&r.open_rank)),
        ("intersection_bound", ubig(&r.intersection_bound)),
        ("final_bound", ubig(&r.final_bound)),
        ("rank_chain", chain(&r.rank_chain)),
        ("intersection_chain", chain(&r.intersection_chain)),
    ])
}

fn ubig(n: &BigUint) -> Value {
    big(&BigInt::from(n.clone()))
}

fn howson_cmd(cli: &Cli, cmd: &HowsonCmd) -> CliResult<Value> {
    let prime = || cli.p.ok_or_else(|| malformed("--p is required"));
    Ok(match cmd {
        HowsonCmd::Bound { d_a, d_b } => json!({"bound": ubig(&howson::bound(prime()?, *d_a, *d_b)?)}),
        HowsonCmd::Depth { d_a, d_b } => json!({"depth": howson::chain_depth(prime()?, *d_a, *d_b)?}),
        HowsonCmd::Schreier { d, index } => json!({"bound": ubig(&howson::schreier_bound(*d, *index)?)}),
        HowsonCmd::Hn { d1, d2 } => json!({"bound": ubig(&howson::hanna_neumann_bound(*d1, *d2)?)}),
        HowsonCmd::Open { d_a, d_b } => json!({"bound": ubig(&howson::open_case_bound(*d_a, *d_b)?)}),
        HowsonCmd::Trace { d_g, d_a, d_b, joint_index } => {
            report_value(&howson::trace(prime()?, *d_g, *d_a, *d_b, joint_index)?)
        }
    })
}

fn witness(cli: &Cli, doc: &Value) -> CliResult<Value> {
    let p = prime_of(doc, cli.p)?;
    let t = as_u64(field(doc, "t")?, "t")? as usize;
    let gamma = as_bigint(field(doc, "gamma")?, "gamma")?;
    let delta = match doc.get("delta") {
        Some(v) => as_bigint(v, "delta")?,
        None => BigInt::from(0),
    };
    let d = as_u64(field(doc, "target_rank")?, "target_rank")? as usize;
    let field_p = LocalRing::field(p)?;
    let lambda = vectors(field(doc, "lambda")?, field_p, "lambda")?;
    let w = retraction_witness(t, &gamma, &delta, p, d, &lambda)?;
    let source: Vec<String> = (1..=t).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
    let target: Vec<String> = (1..=d).map(|i| format!("k{i}")).collect();
    let mu: serde_json::Map<String, Value> =
        source.iter().zip(&w.mu).map(|(name, word)| (name.clone(), word_value(word, &target))).collect();
    Ok(object(vec![
        ("p", json!(p)),
        ("t", json!(t)),
        ("alphabet", json!(source)),
        ("target_alphabet", json!(target)),
        ("lambda", json!(w.lambda)),
        ("mu", Value::Object(mu)),
        ("relator_image", word_value(&w.relator_image, &target)),
    ]))
}
