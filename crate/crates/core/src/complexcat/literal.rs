use serde::{Deserialize, Serialize};

use super::cx::{Cx, CxKind};
use crate::error::{domain, Error, Result};
use crate::exactla::Matrix;
use crate::quiverrep::{Rep, RepCat, RepMap};

/// JSON form of a complex. Matrices are lists of rows; vertices follow the quiver order.
#[derive(Serialize, Deserialize)]
struct CxFile {
    kind: String,
    #[serde(default)]
    m: Option<usize>,
    #[serde(default)]
    lo: Option<i64>,
    components: Vec<RepFile>,
    differentials: Vec<Vec<Vec<Vec<i64>>>>,
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<i64>>>,
}

fn matrix_from_rows(p: u32, rows: usize, cols: usize, data: &[Vec<i64>]) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return domain(format!("expected a {rows}x{cols} matrix"));
    }
    Ok(Matrix::from_vec(p, rows, cols, data.iter().flatten().copied().collect()))
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| x as i64).collect()).collect()
}

impl RepCat {
    fn rep_from_file(&self, f: &RepFile) -> Result<Rep> {
        let arrows = self.quiver().arrows();
        if f.maps.len() != arrows.len() || f.dims.len() != self.n() {
            return domain("representation does not match the quiver");
        }
        let maps = arrows
            .iter()
            .zip(&f.maps)
            .map(|(&(s, t), rows)| matrix_from_rows(self.p(), f.dims[t], f.dims[s], rows))
            .collect::<Result<Vec<_>>>()?;
        self.rep(f.dims.clone(), maps)
    }

    /// Parses and validates a complex literal.
    pub fn cx_from_json(&self, text: &str) -> Result<Cx> {
        let f: CxFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind = match (f.kind.as_str(), f.m) {
            ("cyclic", Some(m)) => CxKind::Cyclic(m),
            ("window", Some(m)) => CxKind::Window(m),
            ("bounded", _) => CxKind::Bounded,
            _ => return Err(Error::Parse("kind must be cyclic or window (with m) or bounded".into())),
        };
        let lo = match kind {
            CxKind::Cyclic(_) => 0,
            CxKind::Window(_) => 1,
            CxKind::Bounded => f.lo.unwrap_or(0),
        };
        let comps = f.components.iter().map(|c| self.rep_from_file(c)).collect::<Result<Vec<_>>>()?;
        let len = comps.len();
        let mut diffs = Vec::with_capacity(f.differentials.len());
        for (s, d) in f.differentials.iter().enumerate() {
            if len == 0 {
                return domain("differential without components");
            }
            let t = if matches!(kind, CxKind::Cyclic(_)) { (s + 1) % len } else { s + 1 };
            if t >= len || d.len() != self.n() {
                return domain("differential does not match components");
            }
            let comps_v = (0..self.n())
                .map(|v| matrix_from_rows(self.p(), comps[t].dims()[v], comps[s].dims()[v], &d[v]))
                .collect::<Result<Vec<_>>>()?;
            diffs.push(RepMap::new(comps_v));
        }
        self.cx(kind, lo, comps, diffs)
    }

    pub fn cx_to_json(&self, x: &Cx) -> String {
        let (kind, m) = match x.kind() {
            CxKind::Cyclic(m) => ("cyclic", Some(m)),
            CxKind::Window(m) => ("window", Some(m)),
            CxKind::Bounded => ("bounded", None),
        };
        let f = CxFile {
            kind: kind.into(),
            m,
            lo: (x.kind() == CxKind::Bounded).then_some(x.lo()),
            components: x
                .comps()
                .iter()
                .map(|c| RepFile { dims: c.dims().to_vec(), maps: c.maps().iter().map(rows_of).collect() })
                .collect(),
            differentials: x.diffs().iter().map(|d| d.comps().iter().map(rows_of).collect()).collect(),
        };
        serde_json::to_string(&f).expect("serializable")
    }
}
