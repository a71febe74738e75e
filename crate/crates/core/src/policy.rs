/// Size caps for the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Policy {
    /// Largest n for sweeps over all of S_n.
    pub max_brute: usize,
    /// Largest polyomino size for the increment-sequence enumerator.
    pub max_polyomino: usize,
}

impl Default for Policy {
    fn default() -> Self {
        Self {
            max_brute: 11,
            max_polyomino: 13,
        }
    }
}

impl Policy {
    pub(crate) fn check_brute(&self, n: usize) -> crate::Result<()> {
        if n > self.max_brute {
            return Err(crate::Error::PolicyRefusal {
                what: "brute-force length",
                requested: n,
                limit: self.max_brute,
            });
        }
        Ok(())
    }
}
