//! Output documents: JSON dumps and CSV tables for groups, structure
//! constants, class matrices, and sweep reports.
//!
//! Serialization is deterministic: fixed struct field order, vectors in
//! basis order, and `num/den` text for rationals. Byte-identical reruns
//! are part of the output contract.

use crate::classes::Space;
use crate::error::{Error, Result};
use crate::euler::{self, NfoldReport, OrthoReport, TripleReport};
use crate::oracle::CrossReport;
use crate::ratio::{format_rat, rat_to_i64};
use crate::weyl::WeylGroup;
use serde::Serialize;

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Internal(format!("serialization failure: {e}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylRow {
    pub word: String,
    pub length: usize,
    pub alt_word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylDump {
    pub group: String,
    pub rank: usize,
    pub order: usize,
    pub positive_roots: usize,
    pub longest: String,
    pub elements: Vec<WeylRow>,
}

pub fn weyl_dump(g: &WeylGroup) -> WeylDump {
    let elements = g
        .elements()
        .map(|e| WeylRow { word: g.word_string(e), length: g.length(e), alt_word: g.alt_word_string(e) })
        .collect();
    WeylDump {
        group: g.root_system().label().to_string(),
        rank: g.rank(),
        order: g.order(),
        positive_roots: g.root_system().num_positive(),
        longest: g.word_string(g.longest_element()),
        elements,
    }
}

pub fn weyl_csv(d: &WeylDump) -> String {
    let mut out = String::from("word,length,alt\n");
    for r in &d.elements {
        out.push_str(&format!("{},{},{}\n", r.word, r.length, r.alt_word));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub u: String,
    pub v: String,
    pub w: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableDump {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub dim: usize,
    pub cells: usize,
    pub entries: Vec<TableEntry>,
}

pub fn table_dump(s: &Space) -> TableDump {
    let g = s.group();
    let word = |id: u32| g.word_string(g.element(id as usize));
    let entries = s
        .table()
        .sorted_entries()
        .into_iter()
        .map(|(u, v, w, coeff)| TableEntry { u: word(u), v: word(v), w: word(w), coeff })
        .collect();
    TableDump {
        space: s.label().to_string(),
        parabolic: s.subset(),
        dim: s.dim(),
        cells: s.num_cells(),
        entries,
    }
}

pub fn table_csv(d: &TableDump) -> String {
    let mut out = String::from("u,v,w,coeff\n");
    for e in &d.entries {
        out.push_str(&format!("{},{},{},{}\n", e.u, e.v, e.w, e.coeff));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Csm,
    Ssm,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassTerm {
    pub basis: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub cell: String,
    pub terms: Vec<ClassTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassDump {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub kind: String,
    pub classes: Vec<ClassRow>,
}

pub fn class_dump(s: &Space, kind: ClassKind) -> ClassDump {
    let classes = (0..s.num_cells())
        .map(|u| {
            let c = match kind {
                ClassKind::Csm => s.csm(u),
                ClassKind::Ssm => s.ssm(u),
            };
            let terms = c
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !num::Zero::is_zero(*v))
                .map(|(p, v)| ClassTerm { basis: s.cell_word(p), value: format_rat(v) })
                .collect();
            ClassRow { cell: s.cell_word(u), terms }
        })
        .collect();
    ClassDump {
        space: s.label().to_string(),
        parabolic: s.subset(),
        kind: match kind {
            ClassKind::Csm => "csm".to_string(),
            ClassKind::Ssm => "ssm".to_string(),
        },
        classes,
    }
}

pub fn class_csv(d: &ClassDump) -> String {
    let mut out = String::from("cell,basis,coeff\n");
    for row in &d.classes {
        for t in &row.terms {
            out.push_str(&format!("{},{},{}\n", row.cell, t.basis, t.value));
        }
    }
    out
}

pub fn triple_csv(rep: &TripleReport) -> String {
    let mut out = String::from("lambda,mu,nuprime,a,d,E,status\n");
    for r in &rep.rows {
        out.push_str(&format!("{},{},{},{},{},{},{}\n", r.lambda, r.mu, r.nuprime, r.a, r.d, r.e, r.status));
    }
    out
}

pub fn ortho_csv(rep: &OrthoReport) -> String {
    let mut out = String::new();
    for row in &rep.matrix {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn nfold_csv(rep: &NfoldReport) -> String {
    let mut out = String::from("cells,chi,d,E,status\n");
    for r in &rep.rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.cells.join(";"), r.chi, r.d, r.e, r.status));
    }
    out
}

pub fn cross_csv(rep: &CrossReport) -> String {
    let mut out = String::from("dims,oracle,pipeline,status\n");
    for r in &rep.rows {
        let dims: Vec<String> = r.dims.iter().map(usize::to_string).collect();
        out.push_str(&format!("{},{},{},{}\n", dims.join(";"), r.oracle, r.pipeline, r.status));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantRow {
    pub nu: String,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsDump {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub lambda: String,
    pub mu: String,
    pub constants: Vec<ConstantRow>,
}

pub fn constants_dump(s: &Space, lambda: usize, mu: usize) -> Result<ConstantsDump> {
    let constants = euler::structure_constants(s, lambda, mu)?
        .into_iter()
        .map(|(nu, value)| ConstantRow { nu: s.cell_word(nu), value })
        .collect();
    Ok(ConstantsDump {
        space: s.label().to_string(),
        parabolic: s.subset(),
        lambda: s.cell_word(lambda),
        mu: s.cell_word(mu),
        constants,
    })
}

pub fn constants_csv(d: &ConstantsDump) -> String {
    let mut out = String::from("nu,a\n");
    for r in &d.constants {
        out.push_str(&format!("{},{}\n", r.nu, r.value));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiDump {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub cells: Vec<String>,
    pub expected_dim: i64,
    pub chi: i64,
}

pub fn chi_dump(s: &Space, cells: &[usize]) -> Result<ChiDump> {
    let chi = rat_to_i64(&euler::chi_multi(s, cells)?)?;
    Ok(ChiDump {
        space: s.label().to_string(),
        parabolic: s.subset(),
        cells: cells.iter().map(|&c| s.cell_word(c)).collect(),
        expected_dim: euler::expected_dim(s, cells),
        chi,
    })
}

pub fn chi_csv(d: &ChiDump) -> String {
    format!("cells,chi,d\n{},{},{}\n", d.cells.join(";"), d.chi, d.expected_dim)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyDoc {
    pub space: String,
    pub parabolic: Vec<usize>,
    pub dim: usize,
    pub cells: usize,
    pub orthogonality: OrthoReport,
    pub positivity: TripleReport,
    pub clean: bool,
}

pub fn verify_doc(s: &Space) -> Result<VerifyDoc> {
    let orthogonality = euler::verify_orthogonality(s)?;
    let positivity = euler::verify_positivity(s)?;
    let clean = orthogonality.identity && positivity.violations == 0;
    Ok(VerifyDoc {
        space: s.label().to_string(),
        parabolic: s.subset(),
        dim: s.dim(),
        cells: s.num_cells(),
        orthogonality,
        positivity,
        clean,
    })
}
