//! The skeletal category of finite sets `{0, .., k-1}`, with bijections as
//! the weak equivalences.

use super::{Mor, MorData, WeCategory};
use crate::error::{Error, Result};

/// Hom-sets larger than this are refused rather than enumerated.
pub const HOM_BUDGET: u64 = 1_000_000;

pub struct FinSetCat {
    name: String,
    max: usize,
}

impl FinSetCat {
    pub fn new(max: usize) -> Self {
        FinSetCat {
            name: "FinSet".into(),
            max,
        }
    }

    pub fn function(&self, src: usize, dst: usize, images: &[u32]) -> Result<Mor> {
        if src > self.max || dst > self.max || images.len() != src || images.iter().any(|&i| i as usize >= dst) {
            return Err(Error::Category(format!("not a function {src} → {dst}")));
        }
        Ok(Mor {
            src,
            dst,
            data: images.into(),
        })
    }
}

impl WeCategory for FinSetCat {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.max + 1
    }

    fn describe(&self, a: usize) -> String {
        format!("[{a}]")
    }

    fn describe_mor(&self, f: &Mor) -> String {
        format!("[{}]→[{}] {:?}", f.src, f.dst, f.data)
    }

    fn identity(&self, a: usize) -> Mor {
        Mor {
            src: a,
            dst: a,
            data: (0..a as u32).collect(),
        }
    }

    fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        if f.dst != g.src {
            return Err(Error::Category(format!("cannot compose {} after {}", self.describe_mor(g), self.describe_mor(f))));
        }
        Ok(Mor {
            src: f.src,
            dst: g.dst,
            data: f.data.iter().map(|&i| g.data[i as usize]).collect(),
        })
    }

    fn is_we(&self, f: &Mor) -> bool {
        self.is_iso(f)
    }

    fn is_iso(&self, f: &Mor) -> bool {
        if f.src != f.dst {
            return false;
        }
        let mut seen = vec![false; f.dst];
        f.data.iter().all(|&i| !std::mem::replace(&mut seen[i as usize], true))
    }

    fn for_each_hom(&self, a: usize, b: usize, visit: &mut dyn FnMut(Mor) -> bool) -> Result<()> {
        let size = (b as u64).checked_pow(a as u32).unwrap_or(u64::MAX);
        if size > HOM_BUDGET {
            return Err(Error::BudgetExceeded(HOM_BUDGET));
        }
        let mut images = vec![0u32; a];
        if a > 0 && b == 0 {
            return Ok(());
        }
        loop {
            if !visit(Mor {
                src: a,
                dst: b,
                data: MorData::from_slice(&images),
            }) {
                return Ok(());
            }
            let mut k = 0;
            loop {
                if k == a {
                    return Ok(());
                }
                images[k] += 1;
                if (images[k] as usize) < b {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::check_category;

    #[test]
    fn hom_sizes() {
        let c = FinSetCat::new(3);
        assert_eq!(c.hom(2, 3).unwrap().len(), 9);
        assert_eq!(c.hom(0, 0).unwrap().len(), 1);
        assert_eq!(c.hom(2, 0).unwrap().len(), 0);
    }

    #[test]
    fn axioms_hold() {
        let r = check_category(&FinSetCat::new(3)).unwrap();
        assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(FinSetCat::new(20).hom(20, 20), Err(Error::BudgetExceeded(_))));
    }
}
