//! Block-structured semidefinite programs in slack form.
//!
//! A problem is
//!
//! ```text
//! maximize   offset + Σ_i b_i y_i
//! subject to Z(y) = C + Σ_i y_i G_i ⪰ 0
//! ```
//!
//! where `Z` is block diagonal. Dense blocks must be PSD; diagonal blocks
//! encode scalar inequalities `Z_pp >= 0`. The dual is
//! `minimize offset + <C, X>` subject to `<G_i, X> = -b_i`, `X ⪰ 0`.

/// Shape of one diagonal block of the slack matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Psd,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub dim: usize,
    pub kind: BlockKind,
}

/// One symmetric entry; `row <= col`, and the mirrored entry is implied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

/// A priori bound on the dual variables, used to certify the optimum from an
/// approximately feasible primal matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum VariableBound {
    /// No bound known: the solver reports no certificate.
    None,
    /// `|y_i| <= c_i` for every feasible `y`.
    Absolute(Vec<f64>),
    /// `|y_i| <= c_i · V(y)` where `V(y) >= 0` is the objective at `y`.
    RelativeToObjective(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpProblem {
    pub blocks: Vec<Block>,
    pub variables: Vec<String>,
    pub objective: Vec<f64>,
    pub offset: f64,
    pub constant: Vec<Entry>,
    pub coefficients: Vec<Vec<Entry>>,
    pub bounds: VariableBound,
}

impl SdpProblem {
    pub fn new() -> Self {
        Self {
            blocks: Vec::new(),
            variables: Vec::new(),
            objective: Vec::new(),
            offset: 0.0,
            constant: Vec::new(),
            coefficients: Vec::new(),
            bounds: VariableBound::None,
        }
    }

    pub fn add_block(&mut self, name: impl Into<String>, dim: usize, kind: BlockKind) -> usize {
        self.blocks.push(Block { name: name.into(), dim, kind });
        self.blocks.len() - 1
    }

    /// Adds a variable with objective coefficient `b` and returns its index.
    pub fn add_variable(&mut self, name: impl Into<String>, b: f64) -> usize {
        self.variables.push(name.into());
        self.objective.push(b);
        self.coefficients.push(Vec::new());
        self.variables.len() - 1
    }

    fn normalise(block: usize, row: usize, col: usize, value: f64) -> Entry {
        let (row, col) = if row <= col { (row, col) } else { (col, row) };
        Entry { block, row, col, value }
    }

    /// `Z[row][col] += value` (and the mirrored entry).
    pub fn add_constant(&mut self, block: usize, row: usize, col: usize, value: f64) {
        if value != 0.0 {
            self.constant.push(Self::normalise(block, row, col, value));
        }
    }

    /// `Z[row][col] += value · y_var` (and the mirrored entry).
    pub fn add_coefficient(&mut self, var: usize, block: usize, row: usize, col: usize, value: f64) {
        if value != 0.0 {
            self.coefficients[var].push(Self::normalise(block, row, col, value));
        }
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Merges repeated entries and sorts everything by `(block, row, col)`.
    pub fn canonicalize(&mut self) {
        fn merge(entries: &mut Vec<Entry>) {
            entries.sort_by_key(|a| (a.block, a.row, a.col));
            let mut out: Vec<Entry> = Vec::with_capacity(entries.len());
            for e in entries.drain(..) {
                match out.last_mut() {
                    Some(last) if (last.block, last.row, last.col) == (e.block, e.row, e.col) => last.value += e.value,
                    _ => out.push(e),
                }
            }
            out.retain(|e| e.value != 0.0);
            *entries = out;
        }
        merge(&mut self.constant);
        for c in &mut self.coefficients {
            merge(c);
        }
    }

    /// Checks indices, symmetry convention and finiteness.
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |msg: String| Err(crate::Error::InvalidParameters(msg));
        if self.objective.len() != self.variables.len() || self.coefficients.len() != self.variables.len() {
            return bad("variable tables have inconsistent lengths".into());
        }
        for b in &self.blocks {
            if b.dim == 0 {
                return bad(format!("block {} has dimension 0", b.name));
            }
        }
        let all = self.constant.iter().chain(self.coefficients.iter().flatten());
        for e in all {
            let Some(block) = self.blocks.get(e.block) else {
                return bad(format!("entry refers to missing block {}", e.block));
            };
            if e.row > e.col || e.col >= block.dim {
                return bad(format!("entry ({},{}) outside block {}", e.row, e.col, block.name));
            }
            if block.kind == BlockKind::Diagonal && e.row != e.col {
                return bad(format!("off-diagonal entry in diagonal block {}", block.name));
            }
            if !e.value.is_finite() {
                return bad(format!("non-finite coefficient in block {}", block.name));
            }
        }
        if self.objective.iter().any(|b| !b.is_finite()) || !self.offset.is_finite() {
            return bad("non-finite objective".into());
        }
        Ok(())
    }

    /// Evaluates `Z(y)` as dense per-block matrices.
    pub fn slack(&self, y: &[f64]) -> Vec<nalgebra::DMatrix<f64>> {
        let mut z: Vec<_> = self.blocks.iter().map(|b| nalgebra::DMatrix::zeros(b.dim, b.dim)).collect();
        let mut put = |e: &Entry, scale: f64| {
            z[e.block][(e.row, e.col)] += scale * e.value;
            if e.row != e.col {
                z[e.block][(e.col, e.row)] += scale * e.value;
            }
        };
        for e in &self.constant {
            put(e, 1.0);
        }
        for (i, entries) in self.coefficients.iter().enumerate() {
            for e in entries {
                put(e, y[i]);
            }
        }
        z
    }

    pub fn objective_value(&self, y: &[f64]) -> f64 {
        self.offset + self.objective.iter().zip(y).map(|(b, v)| b * v).sum::<f64>()
    }
}

impl Default for SdpProblem {
    fn default() -> Self {
        Self::new()
    }
}
