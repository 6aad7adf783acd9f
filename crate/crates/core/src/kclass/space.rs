use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{Monomial, VarGroup, VariableTable};
use crate::error::{Error, Result};

/// Which isotropic complete flag a conjectural formula refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropicType {
    /// Lagrangian (type C).
    C,
    /// Orthogonal (types B and D).
    BD,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Point,
    Projective { n: usize },
    Grassmannian { r: usize, n: usize },
    Flag { dims: Vec<usize>, n: usize },
    Product(Vec<SpaceDescriptor>),
    IsotropicFlag { ty: IsotropicType, n: usize },
}

/// A target space together with its variable table.
///
/// Every level `i` (1-based) owns the symbols `L[i,1..m_i]`; products
/// concatenate the levels of their components.
#[derive(Clone)]
pub struct SpaceDescriptor {
    kind: SpaceKind,
    levels: Vec<Level>,
    table: VariableTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    /// Rank `m_i` of the tautological subbundle.
    pub rank: usize,
    /// Ambient dimension of the component this level belongs to.
    pub ambient: usize,
    /// Table indices of `L[i,1..m_i]`.
    pub vars: Vec<usize>,
}

pub fn l_name(level: usize, j: usize) -> String {
    format!("L[{level},{j}]")
}

pub fn x_name(k: usize) -> String {
    format!("x[{k}]")
}

impl SpaceDescriptor {
    fn build(kind: SpaceKind, ranks: Vec<(usize, usize)>) -> Result<Self> {
        let mut names = Vec::new();
        for (i, (m, _)) in ranks.iter().enumerate() {
            for j in 1..=*m {
                names.push(l_name(i + 1, j));
            }
        }
        let table = VariableTable::new(names)?;
        let mut levels = Vec::new();
        let mut next = 1;
        for (m, n) in ranks {
            levels.push(Level { rank: m, ambient: n, vars: (next..next + m).collect() });
            next += m;
        }
        Ok(SpaceDescriptor { kind, levels, table })
    }

    fn level_ranks(kind: &SpaceKind) -> Vec<(usize, usize)> {
        match kind {
            SpaceKind::Point => Vec::new(),
            SpaceKind::Projective { n } => vec![(1, *n)],
            SpaceKind::Grassmannian { r, n } => vec![(*r, *n)],
            SpaceKind::Flag { dims, n } => dims.iter().map(|&m| (m, *n)).collect(),
            SpaceKind::Product(parts) => parts.iter().flat_map(|p| Self::level_ranks(&p.kind)).collect(),
            // One symbol per successive quotient L_j = S_j^∨ / S_{j-1}^∨.
            SpaceKind::IsotropicFlag { n, .. } => vec![(*n, 2 * *n)],
        }
    }

    pub fn point() -> Self {
        Self::build(SpaceKind::Point, Vec::new()).expect("point table")
    }

    /// `ℙ^{n-1}`, treated as `Gr(1, n)`.
    pub fn projective(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!("projective space needs n >= 2, got {n}")));
        }
        let kind = SpaceKind::Projective { n };
        Self::build(kind.clone(), Self::level_ranks(&kind))
    }

    pub fn grassmannian(r: usize, n: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidSpace(format!("Gr({r},{n}) needs 0 < r < n")));
        }
        let kind = SpaceKind::Grassmannian { r, n };
        Self::build(kind.clone(), Self::level_ranks(&kind))
    }

    pub fn flag(dims: &[usize], n: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpace("flag needs at least one dimension".into()));
        }
        let ok = dims[0] > 0 && dims.windows(2).all(|w| w[0] < w[1]) && *dims.last().unwrap() < n;
        if !ok {
            return Err(Error::InvalidSpace(format!("flag dims {dims:?} must satisfy 0 < m1 < ... < ml < n={n}")));
        }
        let kind = SpaceKind::Flag { dims: dims.to_vec(), n };
        Self::build(kind.clone(), Self::level_ranks(&kind))
    }

    pub fn product(parts: Vec<SpaceDescriptor>) -> Result<Self> {
        if parts.iter().any(|p| matches!(p.kind, SpaceKind::Product(_) | SpaceKind::IsotropicFlag { .. })) {
            return Err(Error::InvalidSpace("product components must be points, projective spaces, Grassmannians or flags".into()));
        }
        let kind = SpaceKind::Product(parts);
        Self::build(kind.clone(), Self::level_ranks(&kind))
    }

    /// `(ℙ^{n-1})^r`.
    pub fn projective_power(n: usize, r: usize) -> Result<Self> {
        let parts = (0..r).map(|_| Self::projective(n)).collect::<Result<Vec<_>>>()?;
        Self::product(parts)
    }

    pub fn isotropic_flag(ty: IsotropicType, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSpace("isotropic flag needs n >= 1".into()));
        }
        let kind = SpaceKind::IsotropicFlag { ty, n };
        Self::build(kind.clone(), Self::level_ranks(&kind))
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Table index of `L[level, j]`, both 1-based.
    pub fn var(&self, level: usize, j: usize) -> usize {
        self.levels[level - 1].vars[j - 1]
    }

    pub fn level_group(&self, level: usize) -> VarGroup {
        VarGroup::new(self.levels[level - 1].vars.clone())
    }

    /// `(r, n)` when the space is a single Grassmannian level (including ℙ).
    pub fn as_grassmannian(&self) -> Option<(usize, usize)> {
        match &self.kind {
            SpaceKind::Projective { n } => Some((1, *n)),
            SpaceKind::Grassmannian { r, n } => Some((*r, *n)),
            SpaceKind::Flag { dims, n } if dims.len() == 1 => Some((dims[0], *n)),
            _ => None,
        }
    }

    /// `q, x[1..n]` for torus-fixed-point evaluation of a Grassmannian.
    pub fn fixed_table(&self) -> Result<VariableTable> {
        let (_, n) = self
            .as_grassmannian()
            .ok_or_else(|| Error::InvalidSpace(format!("{self} is not a Grassmannian")))?;
        VariableTable::new((1..=n).map(x_name))
    }

    /// Monomial `∏ L[level, j]^{e_j}` over this table; `q^qexp` included.
    pub fn char_monomial(&self, entries: &[(usize, usize, i32)], qexp: i32) -> Monomial {
        let mut m = Monomial::var(self.table.len(), 0, qexp);
        for &(level, j, e) in entries {
            let v = self.var(level, j);
            m.set_exp(v, m.exp(v) + e);
        }
        m
    }

    /// Short form used on the command line and in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            SpaceKind::Point => "pt".into(),
            SpaceKind::Projective { n } => format!("pr:{n}"),
            SpaceKind::Grassmannian { r, n } => format!("gr:{r},{n}"),
            SpaceKind::Flag { dims, n } => format!(
                "fl:{};{}",
                dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
                n
            ),
            SpaceKind::Product(parts) => parts.iter().map(|p| p.label()).collect::<Vec<_>>().join("x"),
            SpaceKind::IsotropicFlag { ty: IsotropicType::C, n } => format!("lfl:{n}"),
            SpaceKind::IsotropicFlag { ty: IsotropicType::BD, n } => format!("ifl:{n}"),
        }
    }

    /// Parses the short form produced by [`label`](Self::label).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('x') {
            let parts = s.split('x').map(Self::parse).collect::<Result<Vec<_>>>()?;
            return Self::product(parts);
        }
        let bad = || Error::InvalidSpace(format!("cannot parse space `{s}`"));
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        if s == "pt" {
            return Ok(Self::point());
        }
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        match head {
            "pr" => Self::projective(*nums(rest)?.first().ok_or_else(bad)?),
            "gr" => match nums(rest)?.as_slice() {
                [r, n] => Self::grassmannian(*r, *n),
                _ => Err(bad()),
            },
            "fl" => {
                let (d, n) = rest.split_once(';').ok_or_else(bad)?;
                let n = n.trim().parse::<usize>().map_err(|_| bad())?;
                Self::flag(&nums(d)?, n)
            }
            "lfl" => Self::isotropic_flag(IsotropicType::C, rest.trim().parse().map_err(|_| bad())?),
            "ifl" => Self::isotropic_flag(IsotropicType::BD, rest.trim().parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    /// `{kind, dims, n}`; products list their components.
    pub fn to_json(&self) -> Value {
        match &self.kind {
            SpaceKind::Point => json!({"kind": "point", "dims": [], "n": 0}),
            SpaceKind::Projective { n } => json!({"kind": "projective", "dims": [1], "n": n}),
            SpaceKind::Grassmannian { r, n } => json!({"kind": "grassmannian", "dims": [r], "n": n}),
            SpaceKind::Flag { dims, n } => json!({"kind": "flag", "dims": dims, "n": n}),
            SpaceKind::Product(parts) => json!({
                "kind": "product",
                "dims": self.levels.iter().map(|l| l.rank).collect::<Vec<_>>(),
                "n": self.levels.iter().map(|l| l.ambient).collect::<Vec<_>>(),
                "components": parts.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }),
            SpaceKind::IsotropicFlag { ty, n } => json!({
                "kind": match ty { IsotropicType::C => "lagrangian_flag", IsotropicType::BD => "bd_flag" },
                "dims": (1..=*n).collect::<Vec<_>>(),
                "n": n,
            }),
        }
    }
}

impl PartialEq for SpaceDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for SpaceDescriptor {}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({})", self.label())
    }
}

/// Multidegree `(d_1, …, d_ℓ)`, one entry per level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(levels: usize) -> Self {
        MultiDegree(vec![0; levels])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All multidegrees componentwise at most `cap`, in lexicographic order.
    pub fn up_to(cap: &MultiDegree) -> Vec<MultiDegree> {
        let mut out = vec![Vec::new()];
        for &c in &cap.0 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=c).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiDegree).collect()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
