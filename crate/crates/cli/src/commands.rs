use std::collections::BTreeMap;

use conjwidth::displacement::six_conjugates;
use conjwidth::finwidth::{
    bergman_lemma_check, chain_from_action, chain_norm, class_closure, extension_bound_check,
    induced_metric, minimal_bergman_radius, width, word_lengths, word_norm, ElemSet, FiniteAction,
    FiniteGroup, GroupSpec, PermSpec, SubgroupChain,
};
use conjwidth::freeprod::{
    palindrome_closure_check, palindrome_counterexample, z2z2_decompose, FPWord, FactorSpec,
};
use conjwidth::linear::{bfs_width_fp, matrix_as_t_conjugates, IntMatrix};
use conjwidth::thompson::{bump, random_fprime, PL2Map};
use conjwidth::CommutatorList;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::certificate::AnyCertificate;
use crate::io::{emit, read_json, require_in};
use crate::{Common, Failure, FiniteCmd, FreeprodCmd, SlCmd, ThompsonCmd};

/// Verifies, writes, and reports the factor count on stderr.
fn emit_certificate(cert: AnyCertificate, common: &Common) -> Result<(), Failure> {
    if !cert.verify() {
        return Err(Failure::Check(format!(
            "{} certificate failed verification",
            cert.group()
        )));
    }
    emit(&cert, &common.out)?;
    eprintln!("{}: {} factors, verified", cert.group(), cert.len());
    Ok(())
}

#[derive(Deserialize)]
struct ThompsonInput {
    f: PL2Map,
    #[serde(default)]
    h: Option<CommutatorList<PL2Map>>,
}

pub fn thompson(cmd: ThompsonCmd, common: &Common) -> Result<(), Failure> {
    match cmd {
        ThompsonCmd::Decompose => {
            let input: ThompsonInput = read_json(require_in(&common.input)?)?;
            let h = input.h.unwrap_or_else(|| CommutatorList::new(vec![]));
            let out = six_conjugates(&h, &input.f)?;
            emit_certificate(AnyCertificate::Thompson(out.certificate), common)
        }
        ThompsonCmd::Verify => verify(common, Some("thompson_f")),
        ThompsonCmd::Sample { pairs, complexity } => {
            let base = common.seed.wrapping_mul(1_000_003);
            let h: Vec<(PL2Map, PL2Map)> = (0..pairs as u64)
                .map(|i| {
                    (
                        random_fprime(base.wrapping_add(2 * i + 1), complexity),
                        random_fprime(base.wrapping_add(2 * i + 2), complexity),
                    )
                })
                .collect();
            emit(&json!({ "f": bump(), "h": h }), &common.out)
        }
    }
}

pub fn sl(cmd: SlCmd, common: &Common) -> Result<(), Failure> {
    match cmd {
        SlCmd::Decompose => {
            let m: IntMatrix = read_json(require_in(&common.input)?)?;
            let cert = matrix_as_t_conjugates(&m)?;
            emit_certificate(AnyCertificate::SlZ(cert), common)
        }
        SlCmd::Width { n, p } => {
            let r = bfs_width_fp(n, p, common.max_size)?;
            emit(
                &json!({ "n": n, "p": p, "width": r.width, "ball_sizes": r.ball_sizes }),
                &common.out,
            )
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WordInput {
    Syllables(Vec<(usize, i64)>),
    Letters(String),
}

fn default_spec() -> FactorSpec {
    FactorSpec::z2z2()
}

#[derive(Deserialize)]
struct DecomposeInput {
    #[serde(default = "default_spec")]
    spec: FactorSpec,
    word: WordInput,
}

#[derive(Deserialize)]
struct PalindromeInput {
    spec: FactorSpec,
    word_len: usize,
    conj_len: usize,
}

pub fn freeprod(cmd: FreeprodCmd, common: &Common) -> Result<(), Failure> {
    match cmd {
        FreeprodCmd::Decompose => {
            let input: DecomposeInput = read_json(require_in(&common.input)?)?;
            let word = match input.word {
                WordInput::Syllables(s) => FPWord::reduce(&input.spec, &s)?,
                WordInput::Letters(s) => FPWord::parse(&input.spec, &s)?,
            };
            let cert = z2z2_decompose(&word)?;
            emit_certificate(AnyCertificate::Z2Z2(cert), common)
        }
        FreeprodCmd::PalindromeCheck => {
            let input: PalindromeInput = read_json(require_in(&common.input)?)?;
            let holds = palindrome_closure_check(&input.spec, input.word_len, input.conj_len)?;
            let witness = (!holds)
                .then(|| palindrome_counterexample(&input.spec, input.word_len, input.conj_len))
                .flatten();
            emit(
                &json!({
                    "spec": input.spec,
                    "word_len": input.word_len,
                    "conj_len": input.conj_len,
                    "holds": holds,
                    "counterexample": witness,
                }),
                &common.out,
            )?;
            if holds {
                Ok(())
            } else {
                Err(Failure::Check(
                    "conjugate of a palindrome is not a palindrome".into(),
                ))
            }
        }
    }
}

fn elements(g: &FiniteGroup, specs: &[PermSpec]) -> Result<ElemSet, Failure> {
    let perms = specs
        .iter()
        .map(|p| p.resolve(g.degree()))
        .collect::<conjwidth::Result<Vec<_>>>()?;
    Ok(g.indices_of(&perms)?)
}

fn length_table(g: &FiniteGroup, lengths: &[usize]) -> BTreeMap<String, usize> {
    (0..g.order())
        .map(|i| (g.element(i).to_string(), lengths[i]))
        .collect()
}

#[derive(Deserialize)]
struct WidthInput {
    group: GroupSpec,
    set: Vec<PermSpec>,
}

#[derive(Deserialize)]
struct BergmanInput {
    group: GroupSpec,
    subgroup: Vec<PermSpec>,
    u: Vec<PermSpec>,
    #[serde(default)]
    n: Option<usize>,
}

#[derive(Deserialize)]
struct ExtensionInput {
    group: GroupSpec,
    normal: Vec<PermSpec>,
    u: Vec<PermSpec>,
}

#[derive(Deserialize)]
struct NormsInput {
    group: GroupSpec,
    s: Vec<PermSpec>,
    /// Generators of each chain member, starting with the trivial subgroup.
    #[serde(default)]
    chain: Option<Vec<Vec<PermSpec>>>,
}

#[derive(Serialize)]
struct NormsReport {
    order: usize,
    word_norm_violation: Option<conjwidth::finwidth::NormViolation>,
    metric_violation: Option<conjwidth::finwidth::MetricViolation>,
    action_chain: conjwidth::finwidth::ActionChain,
    chain_norm_violation: Option<conjwidth::finwidth::NormViolation>,
    chain_max_bound_violation: Option<(String, String)>,
}

pub fn finite(cmd: FiniteCmd, common: &Common) -> Result<(), Failure> {
    let path = require_in(&common.input)?;
    match cmd {
        FiniteCmd::Width => {
            let input: WidthInput = read_json(path)?;
            let g = input.group.build(common.max_size)?;
            let s = class_closure(&g, &elements(&g, &input.set)?)?;
            let r = width(&g, &s)?;
            emit(
                &json!({
                    "order": g.order(),
                    "set_size": s.len(),
                    "width": r.width,
                    "ball_sizes": r.ball_sizes,
                    "lengths": length_table(&g, &r.lengths),
                }),
                &common.out,
            )
        }
        FiniteCmd::Bergman => {
            let input: BergmanInput = read_json(path)?;
            let g = input.group.build(common.max_size)?;
            let h = g.subgroup(&elements(&g, &input.subgroup)?);
            let u = elements(&g, &input.u)?;
            let n = match input.n {
                Some(n) => n,
                None => minimal_bergman_radius(&g, &h, &word_lengths(&g, &u)?.lengths),
            };
            let r = bergman_lemma_check(&g, &h, &u, n)?;
            emit(&json!({ "n": n, "report": r }), &common.out)?;
            if !r.hypothesis {
                return Err(Failure::Input(format!(
                    "hypothesis fails: some coset misses U^{n}"
                )));
            }
            if !r.holds {
                return Err(Failure::Check(format!(
                    "<H ∩ U^(2n+1)> has order {} < |H| = {}",
                    r.generated_order, r.subgroup_order
                )));
            }
            Ok(())
        }
        FiniteCmd::Extension => {
            let input: ExtensionInput = read_json(path)?;
            let g = input.group.build(common.max_size)?;
            let h = g.subgroup(&elements(&g, &input.normal)?);
            let u = class_closure(&g, &elements(&g, &input.u)?)?;
            let r = extension_bound_check(&g, &h, &u)?;
            emit(&r, &common.out)?;
            if r.holds {
                Ok(())
            } else {
                Err(Failure::Check(format!("bound fails: {r:?}")))
            }
        }
        FiniteCmd::Norms => {
            let input: NormsInput = read_json(path)?;
            let g = input.group.build(common.max_size)?;
            let s = class_closure(&g, &elements(&g, &input.s)?)?;
            let norm = word_norm(&g, &s)?;
            let metric = induced_metric(&g, &norm)?;
            let action = FiniteAction::left_regular(&g, &metric);
            let action_chain = chain_from_action(&g, &action, g.identity())?;
            let (chain_norm_violation, chain_max_bound_violation) = match input.chain {
                None => (None, None),
                Some(members) => {
                    let members = members
                        .iter()
                        .map(|gens| Ok(g.subgroup(&elements(&g, gens)?)))
                        .collect::<Result<Vec<_>, Failure>>()?;
                    let chain = SubgroupChain::checked(&g, members)?;
                    let l2 = chain_norm(&g, &chain);
                    let show = |(a, b): (usize, usize)| {
                        (g.element(a).to_string(), g.element(b).to_string())
                    };
                    (l2.audit(&g), l2.max_bound_violation(&g).map(show))
                }
            };
            let report = NormsReport {
                order: g.order(),
                word_norm_violation: norm.audit(&g),
                metric_violation: metric.audit(&g),
                action_chain,
                chain_norm_violation,
                chain_max_bound_violation,
            };
            emit(&report, &common.out)?;
            let ok = report.word_norm_violation.is_none()
                && report.metric_violation.is_none()
                && report.action_chain.holds()
                && report.chain_norm_violation.is_none()
                && report.chain_max_bound_violation.is_none();
            if ok {
                Ok(())
            } else {
                Err(Failure::Check(
                    "norm audit found a violation; see report".into(),
                ))
            }
        }
    }
}

fn verify(common: &Common, expect: Option<&str>) -> Result<(), Failure> {
    let cert: AnyCertificate = read_json(require_in(&common.input)?)?;
    if let Some(group) = expect {
        if cert.group() != group {
            return Err(Failure::Input(format!(
                "expected a {group} certificate, found {}",
                cert.group()
            )));
        }
    }
    let verified = cert.verify();
    emit(
        &json!({ "group": cert.group(), "factors": cert.len(), "verified": verified }),
        &common.out,
    )?;
    if verified {
        Ok(())
    } else {
        Err(Failure::Check("certificate does not verify".into()))
    }
}

pub fn verify_any(common: &Common) -> Result<(), Failure> {
    verify(common, None)
}
