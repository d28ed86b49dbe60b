//! Backtracking over finite assignments subject to equations of the form
//! `v[u] = table[v[w]]`. Natural transformations, dependent sections and
//! right Kan extension families are all solutions of such systems.

use crate::error::KanError;

#[derive(Clone, Debug, Default)]
pub(crate) struct Equations {
    domains: Vec<usize>,
    /// Indexed by the later of the two variables.
    by_var: Vec<Vec<Eq>>,
}

#[derive(Clone, Debug)]
struct Eq {
    u: usize,
    w: usize,
    table: Vec<usize>,
}

impl Equations {
    pub(crate) fn new(domains: Vec<usize>) -> Equations {
        let n = domains.len();
        Equations {
            domains,
            by_var: vec![Vec::new(); n],
        }
    }

    /// Requires `v[u] = table[v[w]]`.
    pub(crate) fn require(&mut self, u: usize, w: usize, table: Vec<usize>) {
        let k = u.max(w);
        self.by_var[k].push(Eq { u, w, table });
    }

    /// Every solution, or an error once more than `limit` have been found.
    pub(crate) fn solve_all(&self, limit: usize) -> Result<Vec<Vec<usize>>, KanError> {
        let mut out = Vec::new();
        let mut val = vec![usize::MAX; self.domains.len()];
        if self.search(0, &mut val, &mut out, limit) {
            Ok(out)
        } else {
            Err(KanError::TooManyMaps(limit))
        }
    }

    fn search(&self, k: usize, val: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        if k == self.domains.len() {
            if out.len() >= limit {
                return false;
            }
            out.push(val.clone());
            return true;
        }
        for c in 0..self.domains[k] {
            val[k] = c;
            if self.consistent(k, val) && !self.search(k + 1, val, out, limit) {
                return false;
            }
        }
        val[k] = usize::MAX;
        true
    }

    fn consistent(&self, k: usize, val: &[usize]) -> bool {
        self.by_var[k].iter().all(|e| {
            let src = val[e.w];
            src < e.table.len() && e.table[src] == val[e.u]
        })
    }
}
