use super::{FusionError, FusionSystem};
use crate::gcore::Subgroup;

/// Saturation verdict for one F-conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    /// First member that is fully automized.
    pub fully_automized: Option<Subgroup>,
    /// First member that is receptive.
    pub receptive: Option<Subgroup>,
    /// First member that is both; the class is fine iff this is set.
    pub witness: Option<Subgroup>,
    /// `|Aut_S(rep)|` and `|Aut_F(rep)|`.
    pub aut_s_order: usize,
    pub aut_f_order: usize,
}

#[derive(Debug, Clone)]
pub struct SaturationReport {
    pub classes: Vec<ClassVerdict>,
    pub saturated: bool,
}

impl SaturationReport {
    /// Classes with no member that is both fully automized and receptive.
    pub fn failing(&self) -> impl Iterator<Item = &ClassVerdict> {
        self.classes.iter().filter(|c| c.witness.is_none())
    }
}

impl FusionSystem {
    /// Every subgroup of `S` is F-conjugate to one that is fully automized
    /// and receptive.
    pub fn is_saturated(&self) -> Result<SaturationReport, FusionError> {
        let mut classes = Vec::new();
        for members in self.f_classes()? {
            let representative = members[0].clone();
            let (aut_s_order, aut_f_order) = self.automizer_orders(&representative)?;
            let mut verdict = ClassVerdict {
                representative,
                members: Vec::new(),
                fully_automized: None,
                receptive: None,
                witness: None,
                aut_s_order,
                aut_f_order,
            };
            for q in &members {
                let fa = self.fully_automized(q)?;
                let rec = self.receptive(q)?;
                if fa && verdict.fully_automized.is_none() {
                    verdict.fully_automized = Some(q.clone());
                }
                if rec && verdict.receptive.is_none() {
                    verdict.receptive = Some(q.clone());
                }
                if fa && rec {
                    verdict.witness = Some(q.clone());
                    break;
                }
            }
            verdict.members = members;
            classes.push(verdict);
        }
        let saturated = classes.iter().all(|c| c.witness.is_some());
        Ok(SaturationReport { classes, saturated })
    }
}
