//! Spec-file parsing, command dispatch and text/JSON rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::duality::{decompose_hk, dual_group_capped, nonabelian_dual, parity_condition, ParityResult};
use crate::error::{Error, Result};
use crate::mirror::{full_comparison, MirrorReport, Pairing};
use crate::polynomial::{parse_polynomial, InvertiblePolynomial, Rational};
use crate::state_space::{
    a_state_space, b_state_space, diamond_from_dims, hodge_diamond, Bidegree, GradedBasisVector, GradedSpace,
    HodgeDiamond, SectorKind,
};
use crate::symmetry::{closure, parse_generator, MonomialSymmetry, SymmetryGroup, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Weights,
    Atoms,
    DualPoly,
    Group,
    DualGroup,
    NonabelianDual,
    PcCheck,
    Astate,
    Bstate,
    Hodge,
    MirrorCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Weights => "weights",
            Command::Atoms => "atoms",
            Command::DualPoly => "dual-poly",
            Command::Group => "group",
            Command::DualGroup => "dual-group",
            Command::NonabelianDual => "nonabelian-dual",
            Command::PcCheck => "pc-check",
            Command::Astate => "astate",
            Command::Bstate => "bstate",
            Command::Hodge => "hodge",
            Command::MirrorCheck => "mirror-check",
        }
    }
}

/// Landau-Ginzburg A/B-model state spaces and mirror checks.
#[derive(Debug, Parser)]
#[command(name = "lgmirror", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// File with `W = <polynomial>` and optionally `G = <gen>; <gen>; ...`
    pub specfile: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Largest group the closure may produce
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// bstate: build the B-model of (W, G) itself instead of (W^T, G*)
    #[arg(long)]
    pub direct: bool,
}

/// Contents of a spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub polynomial: String,
    pub generators: Vec<String>,
    /// Byte offsets of the polynomial and of each generator within the file.
    polynomial_offset: usize,
    generator_offsets: Vec<usize>,
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    let mut polynomial = None;
    let mut generators = Vec::new();
    let mut generator_offsets = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let indent = body.len() - trimmed.len();
        if !trimmed.trim().is_empty() {
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| Error::parse(line_start + indent, "expected `W = ...` or `G = ...`"))?;
            let value_offset = line_start + indent + key.len() + 1;
            match key.trim() {
                "W" => {
                    if polynomial.is_some() {
                        return Err(Error::parse(line_start + indent, "W given twice"));
                    }
                    polynomial = Some((value.to_string(), value_offset));
                }
                "G" => {
                    let mut off = value_offset;
                    for part in value.split(';') {
                        if !part.trim().is_empty() {
                            generators.push(part.to_string());
                            generator_offsets.push(off);
                        }
                        off += part.len() + 1;
                    }
                }
                other => {
                    return Err(Error::parse(line_start + indent, format!("unknown key `{other}`")));
                }
            }
        }
        line_start += line.len();
    }
    let (polynomial, polynomial_offset) = polynomial.ok_or_else(|| Error::parse(text.len(), "missing `W = ...` line"))?;
    Ok(ProblemSpec {
        polynomial,
        generators,
        polynomial_offset,
        generator_offsets,
    })
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

impl ProblemSpec {
    pub fn polynomial(&self) -> Result<InvertiblePolynomial> {
        parse_polynomial(&self.polynomial).map_err(|e| shift(e, self.polynomial_offset))
    }

    pub fn group(&self, w: &InvertiblePolynomial, cap: usize) -> Result<SymmetryGroup> {
        let gens: Vec<MonomialSymmetry> = self
            .generators
            .iter()
            .zip(&self.generator_offsets)
            .map(|(g, &off)| parse_generator(g, w).map_err(|e| shift(e, off)))
            .collect::<Result<_>>()?;
        closure(w.n_vars(), &gens, cap)
    }
}

fn rs(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDto {
    pub perm: String,
    pub phases: Vec<String>,
}

impl From<&MonomialSymmetry> for ElementDto {
    fn from(g: &MonomialSymmetry) -> Self {
        ElementDto {
            perm: g.perm().to_string(),
            phases: g.phases().iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDto {
    pub kind: String,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDto {
    pub representative: ElementDto,
    pub label: String,
    pub size: usize,
    pub fixed_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub order: usize,
    pub abelian: bool,
    pub generators: Vec<ElementDto>,
    pub classes: Vec<ClassDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimDto {
    pub bidegree: [String; 2],
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub phase: String,
    pub exponents: Vec<u32>,
    pub sector: ElementDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDto {
    pub label: String,
    pub bidegree: [String; 2],
    pub terms: Vec<TermDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDto {
    pub untwisted: usize,
    pub twisted_broad: usize,
    pub narrow: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDto {
    pub side: String,
    pub total_dim: usize,
    pub dims: Vec<DimDto>,
    pub census: CensusDto,
    pub diamond: Vec<Vec<usize>>,
    pub basis: Vec<BasisDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub elements: Vec<ElementDto>,
    pub fixed_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcDto {
    pub holds: bool,
    pub witness: Option<WitnessDto>,
    pub subgroups_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDto {
    pub corner: String,
    pub bidegree: [String; 2],
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffDto {
    pub bidegree: [String; 2],
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDiffDto {
    pub sector: ElementDto,
    pub label: String,
    pub a: Vec<[String; 2]>,
    pub b: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorDto {
    pub verdict: String,
    pub pc: PcDto,
    pub dual_group_order: usize,
    pub a: SpaceDto,
    pub b: SpaceDto,
    pub bidegree_diffs: Vec<DiffDto>,
    pub sector_diffs: Vec<SectorDiffDto>,
    pub pairings: Vec<PairingDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDto {
    pub kind: String,
    pub message: String,
}

/// The JSON document emitted by every command.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_weight: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<AtomDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pc: Option<PcDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror: Option<MirrorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDto>,
}

fn bidegree_dto(b: &Bidegree) -> [String; 2] {
    [rs(&b.0), rs(&b.1)]
}

fn group_dto(group: &SymmetryGroup, dims: Option<&GradedSpace>) -> GroupDto {
    let classes = group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rep = group.element(c[0]);
            ClassDto {
                representative: rep.into(),
                label: rep.to_string(),
                size: c.len(),
                fixed_dim: rep.fixed_locus().dimension(),
                dim: dims.map(|s| s.census[i].dim),
            }
        })
        .collect();
    GroupDto {
        order: group.order(),
        abelian: group.is_abelian(),
        generators: group.generators().iter().map(ElementDto::from).collect(),
        classes,
    }
}

fn basis_dto(v: &GradedBasisVector) -> BasisDto {
    BasisDto {
        label: v.label(),
        bidegree: bidegree_dto(&v.bidegree),
        terms: v
            .terms
            .iter()
            .map(|t| TermDto {
                phase: t.phase.to_string(),
                exponents: t.exponents.clone(),
                sector: (&t.sector).into(),
            })
            .collect(),
    }
}

fn space_dto(space: &GradedSpace) -> SpaceDto {
    SpaceDto {
        side: space.side.to_string(),
        total_dim: space.total_dim,
        dims: space
            .dims
            .iter()
            .map(|(b, &d)| DimDto {
                bidegree: bidegree_dto(b),
                dim: d,
            })
            .collect(),
        census: CensusDto {
            untwisted: space.census_dim(SectorKind::Untwisted),
            twisted_broad: space.census_dim(SectorKind::TwistedBroad),
            narrow: space.census_dim(SectorKind::Narrow),
        },
        diamond: hodge_diamond(space).rows,
        basis: space.basis.iter().map(basis_dto).collect(),
    }
}

fn pc_dto(pc: &ParityResult) -> PcDto {
    PcDto {
        holds: pc.holds,
        witness: pc.witness.as_ref().map(|w| WitnessDto {
            elements: w.elements.iter().map(ElementDto::from).collect(),
            fixed_dim: w.fixed_dim,
        }),
        subgroups_checked: pc.subgroups_checked,
    }
}

fn pairing_dto(corner: &str, p: &Pairing) -> PairingDto {
    PairingDto {
        corner: corner.to_string(),
        bidegree: bidegree_dto(&p.bidegree()),
        a: p.a.label(),
        b: p.b.label(),
    }
}

fn mirror_dto(r: &MirrorReport) -> MirrorDto {
    let mut pairings: Vec<PairingDto> = r.restricted.a0_to_bnar.iter().map(|p| pairing_dto("A0->Bnar", p)).collect();
    pairings.extend(r.restricted.anar_to_b0.iter().map(|p| pairing_dto("Anar->B0", p)));
    MirrorDto {
        verdict: r.verdict.to_string(),
        pc: pc_dto(&r.pc),
        dual_group_order: r.dual_group.order(),
        a: space_dto(&r.a_space),
        b: space_dto(&r.b_space),
        bidegree_diffs: r
            .bidegree_diffs
            .iter()
            .map(|(b, x, y)| DiffDto {
                bidegree: bidegree_dto(b),
                a: *x,
                b: *y,
            })
            .collect(),
        sector_diffs: r
            .sector_diffs
            .iter()
            .map(|d| SectorDiffDto {
                sector: (&d.sector).into(),
                label: d.sector.to_string(),
                a: d.a.iter().map(bidegree_dto).collect(),
                b: d.b.iter().map(bidegree_dto).collect(),
            })
            .collect(),
        pairings,
    }
}

/// Runs `command` on the spec text and returns the document.
pub fn execute(command: Command, spec_text: &str, cap: usize, direct: bool) -> Result<Document> {
    let spec = parse_spec(spec_text)?;
    let w = spec.polynomial()?;
    let mut doc = Document {
        command: command.name().to_string(),
        polynomial: w.to_string(),
        ..Document::default()
    };
    match command {
        Command::Weights => {
            doc.weights = Some(w.weights().iter().map(rs).collect());
            doc.half_weight = Some(w.has_half_weight());
        }
        Command::Atoms => {
            doc.atoms = Some(
                w.atoms()
                    .iter()
                    .map(|a| AtomDto {
                        kind: a.kind.to_string(),
                        variables: a.variables.iter().map(|i| i + 1).collect(),
                        exponents: a.exponents.clone(),
                    })
                    .collect(),
            );
        }
        Command::DualPoly => {
            let wt = w.transpose();
            doc.dual_polynomial = Some(wt.to_string());
            doc.weights = Some(wt.weights().iter().map(rs).collect());
            doc.half_weight = Some(wt.has_half_weight());
        }
        Command::Group => {
            let g = spec.group(&w, cap)?;
            doc.group = Some(group_dto(&g, None));
        }
        Command::DualGroup => {
            let g = spec.group(&w, cap)?;
            let gt = dual_group_capped(&g, &w, cap)?;
            doc.dual_polynomial = Some(w.transpose().to_string());
            doc.group = Some(group_dto(&gt, None));
        }
        Command::NonabelianDual => {
            let g = spec.group(&w, cap)?;
            let gs = nonabelian_dual(&g, &w, cap)?;
            doc.dual_polynomial = Some(w.transpose().to_string());
            doc.group = Some(group_dto(&gs, None));
        }
        Command::PcCheck => {
            let g = spec.group(&w, cap)?;
            let k = decompose_hk(&g, &w)?.k;
            doc.pc = Some(pc_dto(&parity_condition(&k)?));
        }
        Command::Astate => {
            let g = spec.group(&w, cap)?;
            let a = a_state_space(&w, &g)?;
            doc.group = Some(group_dto(&g, Some(&a)));
            doc.space = Some(space_dto(&a));
        }
        Command::Bstate => {
            let g = spec.group(&w, cap)?;
            let (wb, gb) = if direct {
                (w.clone(), g)
            } else {
                (w.transpose(), nonabelian_dual(&g, &w, cap)?)
            };
            let b = b_state_space(&wb, &gb)?;
            doc.dual_polynomial = (!direct).then(|| wb.to_string());
            doc.group = Some(group_dto(&gb, Some(&b)));
            doc.space = Some(space_dto(&b));
        }
        Command::Hodge | Command::MirrorCheck => {
            let g = spec.group(&w, cap)?;
            let r = full_comparison(&w, &g, cap)?;
            doc.dual_polynomial = Some(w.transpose().to_string());
            doc.group = Some(group_dto(&g, Some(&r.a_space)));
            let mut m = mirror_dto(&r);
            if command == Command::Hodge {
                m.a.basis.clear();
                m.b.basis.clear();
                m.pairings.clear();
            }
            doc.mirror = Some(m);
        }
    }
    Ok(doc)
}

fn bideg_text(b: &[String; 2]) -> String {
    format!("({}, {})", b[0], b[1])
}

fn diamond_text(rows: &[Vec<usize>], dims: &[DimDto]) -> String {
    let dims = dims
        .iter()
        .map(|d| {
            let parse = |s: &str| s.parse::<Rational>().expect("rendered rational");
            ((parse(&d.bidegree[0]), parse(&d.bidegree[1])), d.dim)
        })
        .collect();
    let diamond: HodgeDiamond = diamond_from_dims(&dims);
    debug_assert!(rows.is_empty() || diamond.rows == rows);
    diamond.render()
}

fn space_text(out: &mut String, s: &SpaceDto, with_basis: bool) {
    let _ = writeln!(out, "{}-model: total dimension {}", s.side, s.total_dim);
    let _ = writeln!(
        out,
        "census: untwisted {}, twisted broad {}, narrow {}",
        s.census.untwisted, s.census.twisted_broad, s.census.narrow
    );
    for d in &s.dims {
        let _ = writeln!(out, "  {}: {}", bideg_text(&d.bidegree), d.dim);
    }
    out.push_str(&diamond_text(&s.diamond, &s.dims));
    if with_basis {
        for b in &s.basis {
            let _ = writeln!(out, "{}  {}", bideg_text(&b.bidegree), truncate_label(b));
        }
    }
}

fn truncate_label(b: &BasisDto) -> String {
    const SHOWN: usize = 3;
    let mut sectors: Vec<&ElementDto> = b.terms.iter().map(|t| &t.sector).collect();
    sectors.dedup();
    if sectors.len() <= SHOWN {
        return b.label.clone();
    }
    // cut after the third sector group
    let mut depth = 0;
    let mut groups = 0;
    for (i, ch) in b.label.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 {
                    groups += 1;
                    if groups == SHOWN {
                        return format!("{} + ({} more)", &b.label[..=i], sectors.len() - SHOWN);
                    }
                }
            }
            _ => {}
        }
    }
    b.label.clone()
}

fn group_text(out: &mut String, g: &GroupDto) {
    let _ = writeln!(out, "order {}{}", g.order, if g.abelian { ", abelian" } else { "" });
    let _ = writeln!(out, "{} conjugacy classes:", g.classes.len());
    for c in &g.classes {
        let _ = write!(out, "  {}  size {}  fixed dim {}", c.label, c.size, c.fixed_dim);
        if let Some(d) = c.dim {
            let _ = write!(out, "  contributes {d}");
        }
        out.push('\n');
    }
}

fn pc_text(out: &mut String, pc: &PcDto) {
    let _ = writeln!(
        out,
        "parity condition: {} ({} subgroups checked)",
        if pc.holds { "holds" } else { "fails" },
        pc.subgroups_checked
    );
    if let Some(w) = &pc.witness {
        let perms: Vec<&str> = w.elements.iter().map(|e| e.perm.as_str()).collect();
        let _ = writeln!(out, "witness {{{}}} fixes a subspace of dimension {}", perms.join(", "), w.fixed_dim);
    }
}

/// Human-readable rendering of a document.
pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "W = {}", doc.polynomial);
    if let Some(wt) = &doc.dual_polynomial {
        let _ = writeln!(out, "W^T = {wt}");
    }
    if let Some(ws) = &doc.weights {
        let _ = writeln!(out, "weights: {}", ws.join(" "));
        if doc.half_weight == Some(true) {
            out.push_str("note: a weight equals 1/2\n");
        }
    }
    if let Some(atoms) = &doc.atoms {
        for a in atoms {
            let vars: Vec<String> = a.variables.iter().map(|i| format!("x{i}")).collect();
            let exps: Vec<String> = a.exponents.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{} on {} with exponents {}", a.kind, vars.join(","), exps.join(","));
        }
    }
    let has_space = doc.space.is_some();
    if let Some(g) = &doc.group {
        if !has_space {
            group_text(&mut out, g);
        } else {
            let _ = writeln!(out, "group order {}", g.order);
        }
    }
    if let Some(pc) = &doc.pc {
        pc_text(&mut out, pc);
    }
    if let Some(s) = &doc.space {
        space_text(&mut out, s, true);
    }
    if let Some(m) = &doc.mirror {
        let _ = writeln!(out, "dual group order {}", m.dual_group_order);
        let with_basis = !m.pairings.is_empty();
        space_text(&mut out, &m.a, false);
        space_text(&mut out, &m.b, false);
        let _ = writeln!(out, "verdict: {}", m.verdict);
        pc_text(&mut out, &m.pc);
        for d in &m.bidegree_diffs {
            let _ = writeln!(out, "  {}: A {} vs B {}", bideg_text(&d.bidegree), d.a, d.b);
        }
        if !m.bidegree_diffs.is_empty() {
            for d in &m.sector_diffs {
                let list = |v: &[[String; 2]]| {
                    if v.is_empty() {
                        "nothing".to_string()
                    } else {
                        v.iter().map(bideg_text).collect::<Vec<_>>().join(" ")
                    }
                };
                let _ = writeln!(out, "  sector {}: A {} vs B {}", d.label, list(&d.a), list(&d.b));
            }
        }
        if with_basis {
            let _ = writeln!(out, "restricted mirror map ({} pairings):", m.pairings.len());
            for p in &m.pairings {
                let _ = writeln!(out, "  {} {}  {}  <->  {}", p.corner, bideg_text(&p.bidegree), p.a, p.b);
            }
        }
    }
    out
}

/// Output bytes and exit code for one invocation.
pub fn run(cli: &Cli) -> (String, i32) {
    let result = std::fs::read_to_string(&cli.specfile)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", cli.specfile.display())))
        .and_then(|text| execute(cli.command, &text, cli.cap, cli.direct));
    match result {
        Ok(doc) if cli.json => (serde_json::to_string_pretty(&doc).expect("serializable") + "\n", 0),
        Ok(doc) => (render_text(&doc), 0),
        Err(e) => {
            let doc = Document {
                command: cli.command.name().to_string(),
                error: Some(ErrorDto {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                }),
                ..Document::default()
            };
            if cli.json {
                (serde_json::to_string_pretty(&doc).expect("serializable") + "\n", 1)
            } else {
                (format!("error[{}]: {}\n", e.kind(), e), 1)
            }
        }
    }
}
