//! Finite simplicial sets given by their nondegenerate simplices and face
//! tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `θ^* x` for a nondegenerate simplex `x` and a monotone surjection
/// `θ : [n] → [dim x]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    pub id: usize,
    pub map: Vec<usize>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.map.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.map.windows(2).any(|w| w[0] == w[1])
    }
}

/// The text format: simplex names per dimension, the faces of every simplex
/// of positive dimension as names or `"s_i ... name"` degeneracies, and an
/// optional basepoint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    pub dimensions: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<String>>,
}

#[derive(Debug)]
pub struct SimplicialSet {
    names: Vec<String>,
    dims: Vec<usize>,
    by_dim: Vec<Vec<usize>>,
    faces: Vec<Vec<Simplex>>,
    basepoint: Option<usize>,
    restrictions: RwLock<HashMap<(usize, Vec<usize>), Simplex>>,
}

impl Clone for SimplicialSet {
    fn clone(&self) -> Self {
        SimplicialSet {
            names: self.names.clone(),
            dims: self.dims.clone(),
            by_dim: self.by_dim.clone(),
            faces: self.faces.clone(),
            basepoint: self.basepoint,
            restrictions: RwLock::default(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedSimplicialSet(msg.into())
}

/// `σ_i : [n+1] → [n]`, hitting `i` twice.
fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1)
        .map(|j| if j <= i { j } else { j - 1 })
        .collect()
}

impl SimplicialSet {
    fn build(
        names: Vec<String>,
        dims: Vec<usize>,
        faces: Vec<Vec<Simplex>>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        let top = dims.iter().copied().max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top + 1];
        for (id, &d) in dims.iter().enumerate() {
            by_dim[d].push(id);
        }
        let x = SimplicialSet {
            names,
            dims,
            by_dim,
            faces,
            basepoint,
            restrictions: RwLock::default(),
        };
        x.validate()?;
        Ok(x)
    }

    pub fn from_file(file: &SimplicialSetFile) -> Result<Self> {
        let mut index = HashMap::new();
        let mut names = Vec::new();
        let mut dims = Vec::new();
        for (d, level) in file.dimensions.iter().enumerate() {
            for name in level {
                if index.insert(name.clone(), names.len()).is_some() {
                    return Err(malformed(format!("duplicate simplex {name}")));
                }
                names.push(name.clone());
                dims.push(d);
            }
        }
        let mut faces = Vec::with_capacity(names.len());
        for (id, name) in names.iter().enumerate() {
            let d = dims[id];
            if d == 0 {
                if file.faces.get(name).is_some_and(|f| !f.is_empty()) {
                    return Err(malformed(format!("vertex {name} has faces")));
                }
                faces.push(Vec::new());
                continue;
            }
            let list = file
                .faces
                .get(name)
                .ok_or_else(|| malformed(format!("no faces for {name}")))?;
            if list.len() != d + 1 {
                return Err(malformed(format!(
                    "{name} needs {} faces, got {}",
                    d + 1,
                    list.len()
                )));
            }
            let mut fs = Vec::with_capacity(d + 1);
            for expr in list {
                let s = Self::parse_face(expr, &index, &dims)?;
                if s.dim() != d - 1 {
                    return Err(malformed(format!(
                        "face {expr} of {name} has dimension {}",
                        s.dim()
                    )));
                }
                fs.push(s);
            }
            faces.push(fs);
        }
        for name in file.faces.keys() {
            if !index.contains_key(name) {
                return Err(malformed(format!("faces given for unknown simplex {name}")));
            }
        }
        let basepoint = match &file.basepoint {
            None => None,
            Some(b) => {
                let id = *index
                    .get(b)
                    .ok_or_else(|| malformed(format!("unknown basepoint {b}")))?;
                if dims[id] != 0 {
                    return Err(malformed("the basepoint must be a vertex"));
                }
                Some(id)
            }
        };
        Self::build(names, dims, faces, basepoint)
    }

    fn parse_face(expr: &str, index: &HashMap<String, usize>, dims: &[usize]) -> Result<Simplex> {
        let words: Vec<&str> = expr.split_whitespace().collect();
        let (name, ops) = words.split_last().ok_or_else(|| malformed("empty face"))?;
        let id = *index
            .get(*name)
            .ok_or_else(|| malformed(format!("unknown simplex {name}")))?;
        let mut map: Vec<usize> = (0..=dims[id]).collect();
        for op in ops.iter().rev() {
            let i: usize = op
                .strip_prefix('s')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| malformed(format!("bad degeneracy {op}")))?;
            let n = map.len() - 1;
            if i > n {
                return Err(malformed(format!("degeneracy {op} on a {n}-simplex")));
            }
            let sigma = codegeneracy(n, i);
            map = sigma.iter().map(|&j| map[j]).collect();
        }
        Ok(Simplex { id, map })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SimplicialSetFile =
            serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SimplicialSetFile {
        let dimensions = self
            .by_dim
            .iter()
            .map(|ids| ids.iter().map(|&i| self.names[i].clone()).collect())
            .collect();
        let mut faces = BTreeMap::new();
        for (id, fs) in self.faces.iter().enumerate() {
            if !fs.is_empty() {
                faces.insert(
                    self.names[id].clone(),
                    fs.iter().map(|s| self.format_simplex(s)).collect(),
                );
            }
        }
        SimplicialSetFile {
            basepoint: self.basepoint.map(|b| self.names[b].clone()),
            dimensions,
            faces,
        }
    }

    /// `s_{i_1} ... s_{i_r} name`, the standard form of a degenerate simplex.
    pub fn format_simplex(&self, s: &Simplex) -> String {
        let mut ops = Vec::new();
        for j in (0..s.map.len().saturating_sub(1)).rev() {
            if s.map[j] == s.map[j + 1] {
                ops.push(format!("s{j}"));
            }
        }
        ops.reverse();
        ops.push(self.names[s.id].clone());
        ops.join(" ")
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every simplex.
    pub fn validate(&self) -> Result<()> {
        for id in 0..self.names.len() {
            let n = self.dims[id];
            if n < 2 {
                continue;
            }
            let x = self.nondegenerate(id);
            for j in 0..=n {
                for i in 0..j {
                    let a = self.face(&self.face(&x, j), i);
                    let b = self.face(&self.face(&x, i), j - 1);
                    if a != b {
                        return Err(malformed(format!(
                            "d{i} d{j} != d{} d{i} on {}",
                            j - 1,
                            self.names[id]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dim_of(&self, id: usize) -> usize {
        self.dims[id]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    /// Nondegenerate simplices of dimension `d`.
    pub fn simplices(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn nondegenerate(&self, id: usize) -> Simplex {
        Simplex {
            id,
            map: (0..=self.dims[id]).collect(),
        }
    }

    /// `d_t s`.
    pub fn face(&self, s: &Simplex, t: usize) -> Simplex {
        let u: Vec<usize> = (0..=s.dim()).filter(|&v| v != t).collect();
        self.restrict(s, &u)
    }

    /// `u^* s` for an increasing list `u` of vertices of `s`.
    pub fn restrict(&self, s: &Simplex, u: &[usize]) -> Simplex {
        let v: Vec<usize> = u.iter().map(|&j| s.map[j]).collect();
        let image: Vec<usize> = v.iter().copied().dedup().collect();
        let rho: Vec<usize> = v.iter().map(|x| image.binary_search(x).unwrap()).collect();
        let base = self.restrict_nondegenerate(s.id, &image);
        Simplex {
            id: base.id,
            map: rho.iter().map(|&r| base.map[r]).collect(),
        }
    }

    fn restrict_nondegenerate(&self, id: usize, image: &[usize]) -> Simplex {
        if image.len() == self.dims[id] + 1 {
            return self.nondegenerate(id);
        }
        let key = (id, image.to_vec());
        if let Some(s) = self.restrictions.read().unwrap().get(&key) {
            return s.clone();
        }
        let missing = (0..=self.dims[id])
            .rev()
            .find(|v| image.binary_search(v).is_err())
            .unwrap();
        let shifted: Vec<usize> = image
            .iter()
            .map(|&i| if i > missing { i - 1 } else { i })
            .collect();
        let out = self.restrict(&self.faces[id][missing], &shifted);
        self.restrictions.write().unwrap().insert(key, out.clone());
        out
    }

    /// The nondegenerate simplex spanned by the vertices `u` of `id`, if the
    /// face is nondegenerate.
    pub fn nondegenerate_face(&self, id: usize, u: &[usize]) -> Option<usize> {
        let s = self.restrict(&self.nondegenerate(id), u);
        (!s.is_degenerate()).then_some(s.id)
    }

    /// `Δ^n` with simplices named by their vertex strings, pointed at `0`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut names = Vec::new();
        let mut dims = Vec::new();
        let mut index = HashMap::new();
        let mut subsets = Vec::new();
        for d in 0..=n {
            for c in (0..=n).combinations(d + 1) {
                index.insert(c.clone(), names.len());
                names.push(
                    c.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(if n > 9 { "," } else { "" }),
                );
                dims.push(d);
                subsets.push(c);
            }
        }
        let faces = subsets
            .iter()
            .map(|c| {
                if c.len() == 1 {
                    return Vec::new();
                }
                (0..c.len())
                    .map(|t| {
                        let mut f = c.clone();
                        f.remove(t);
                        Simplex {
                            id: index[&f],
                            map: (0..f.len()).collect(),
                        }
                    })
                    .collect()
            })
            .collect();
        Self::build(names, dims, faces, Some(0)).expect("the standard simplex is valid")
    }

    /// `Δ^n / ∂Δ^n`: a vertex `*` and an `n`-simplex `σ` with collapsed
    /// boundary.
    pub fn sphere(n: usize) -> Self {
        assert!(n >= 1, "spheres of dimension at least 1");
        let faces = vec![
            Vec::new(),
            (0..=n)
                .map(|_| Simplex {
                    id: 0,
                    map: vec![0; n],
                })
                .collect(),
        ];
        Self::build(vec!["*".into(), "σ".into()], vec![0, n], faces, Some(0))
            .expect("spheres are valid")
    }

    /// The real projective plane: a vertex `*`, an edge `e` and a triangle
    /// `σ` with faces `(e, s0 *, e)`.
    pub fn projective_plane() -> Self {
        let point = |n: usize| Simplex {
            id: 0,
            map: vec![0; n + 1],
        };
        let e = Simplex {
            id: 1,
            map: vec![0, 1],
        };
        let faces = vec![
            Vec::new(),
            vec![point(0), point(0)],
            vec![e.clone(), point(1), e],
        ];
        Self::build(
            vec!["*".into(), "e".into(), "σ".into()],
            vec![0, 1, 2],
            faces,
            Some(0),
        )
        .expect("the projective plane is valid")
    }

    /// The product `X × Y`, with simplices named `(x,y)` after the pair of
    /// (possibly degenerate) simplices they are made of.
    pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Self {
        let top = x.dimension() + y.dimension();
        let mut pairs: Vec<(Simplex, Simplex)> = Vec::new();
        let mut index: HashMap<(Simplex, Simplex), usize> = HashMap::new();
        let surjections = |n: usize, d: usize| -> Vec<Vec<usize>> {
            if d > n {
                return Vec::new();
            }
            (1..=n)
                .combinations(d)
                .map(|jumps| {
                    (0..=n)
                        .map(|j| jumps.iter().filter(|&&s| s <= j).count())
                        .collect()
                })
                .collect()
        };
        for n in 0..=top {
            for a_id in 0..x.len() {
                for b_id in 0..y.len() {
                    for ma in surjections(n, x.dims[a_id]) {
                        for mb in surjections(n, y.dims[b_id]) {
                            let joint_ok = (0..n).all(|j| ma[j] != ma[j + 1] || mb[j] != mb[j + 1]);
                            if joint_ok {
                                let key = (
                                    Simplex {
                                        id: a_id,
                                        map: ma.clone(),
                                    },
                                    Simplex { id: b_id, map: mb },
                                );
                                index.insert(key.clone(), pairs.len());
                                pairs.push(key);
                            }
                        }
                    }
                }
            }
        }
        let names: Vec<String> = pairs
            .iter()
            .map(|(a, b)| format!("({},{})", x.format_simplex(a), y.format_simplex(b)))
            .collect();
        let dims: Vec<usize> = pairs.iter().map(|(a, _)| a.dim()).collect();
        let faces = pairs
            .iter()
            .map(|(a, b)| {
                if a.dim() == 0 {
                    return Vec::new();
                }
                (0..=a.dim())
                    .map(|t| {
                        let (fa, fb) = (x.face(a, t), y.face(b, t));
                        let n = fa.dim();
                        let mut rho = vec![0];
                        for j in 0..n {
                            let same = fa.map[j] == fa.map[j + 1] && fb.map[j] == fb.map[j + 1];
                            rho.push(rho[j] + usize::from(!same));
                        }
                        let keep: Vec<usize> = (0..=n)
                            .filter(|&j| j == 0 || rho[j] != rho[j - 1])
                            .collect();
                        let na = Simplex {
                            id: fa.id,
                            map: keep.iter().map(|&j| fa.map[j]).collect(),
                        };
                        let nb = Simplex {
                            id: fb.id,
                            map: keep.iter().map(|&j| fb.map[j]).collect(),
                        };
                        Simplex {
                            id: index[&(na, nb)],
                            map: rho,
                        }
                    })
                    .collect()
            })
            .collect();
        let basepoint = match (x.basepoint, y.basepoint) {
            (Some(p), Some(q)) => Some(index[&(x.nondegenerate(p), y.nondegenerate(q))]),
            _ => None,
        };
        Self::build(names, dims, faces, basepoint).expect("products of valid sets are valid")
    }
}
