use crate::angular::{AngularPdf, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::partition::Regime;

/// One user's prior on its angle of departure and its priority weight.
#[derive(Debug, Clone, PartialEq)]
pub struct User {
    pub pdf: AngularPdf,
    pub weight: f64,
}

/// Users, probing budget and beam constraint for one design problem.
///
/// Feedback slots `d` and frame length `T` are carried as metadata only.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    users: Vec<User>,
    b: usize,
    constraint: Regime,
    feedback_slots: Option<usize>,
    frame_len: Option<usize>,
    mixture: AngularPdf,
}

impl Scenario {
    pub fn new(users: Vec<User>, b: usize, constraint: Regime) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::InvalidScenario("no users".into()));
        }
        if b == 0 {
            return Err(Error::InvalidScenario("need at least one probing slot".into()));
        }
        if let Some(j) = users.iter().position(|u| u.weight.is_nan() || u.weight < 0.0) {
            return Err(Error::InvalidScenario(format!("user {j} has a negative weight")));
        }
        let sum: f64 = users.iter().map(|u| u.weight).sum();
        if (sum - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::WeightSum { sum });
        }
        let pdfs: Vec<AngularPdf> = users.iter().map(|u| u.pdf.clone()).collect();
        let weights: Vec<f64> = users.iter().map(|u| u.weight).collect();
        let mixture = AngularPdf::mixture(&pdfs, &weights)?;
        Ok(Scenario {
            users,
            b,
            constraint,
            feedback_slots: None,
            frame_len: None,
            mixture,
        })
    }

    /// Single user with weight 1.
    pub fn single(pdf: AngularPdf, b: usize, constraint: Regime) -> Result<Self> {
        Self::new(vec![User { pdf, weight: 1.0 }], b, constraint)
    }

    /// Attaches the feedback-slot count and frame length.
    pub fn with_frame(mut self, feedback_slots: Option<usize>, frame_len: Option<usize>) -> Result<Self> {
        if let Some(t) = frame_len {
            let used = self.b.saturating_add(feedback_slots.unwrap_or(0));
            if used > t {
                return Err(Error::InvalidScenario(format!(
                    "b + d = {used} exceeds frame length {t}"
                )));
            }
        }
        self.feedback_slots = feedback_slots;
        self.frame_len = frame_len;
        Ok(self)
    }

    /// Same users and constraint with a different probing budget. Frame
    /// metadata is dropped if the new budget no longer fits.
    pub fn with_slots(&self, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidScenario("need at least one probing slot".into()));
        }
        let mut s = self.clone();
        s.b = b;
        if let Some(t) = s.frame_len {
            if b.saturating_add(s.feedback_slots.unwrap_or(0)) > t {
                s.frame_len = None;
            }
        }
        Ok(s)
    }

    pub fn with_constraint(&self, constraint: Regime) -> Self {
        let mut s = self.clone();
        s.constraint = constraint;
        s
    }

    pub fn users(&self) -> &[User] {
        &self.users
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn constraint(&self) -> Regime {
        self.constraint
    }

    pub fn feedback_slots(&self) -> Option<usize> {
        self.feedback_slots
    }

    pub fn frame_len(&self) -> Option<usize> {
        self.frame_len
    }

    /// Weighted mixture of the users' priors.
    pub fn mixture(&self) -> &AngularPdf {
        &self.mixture
    }

    /// Fraction `(b + d) / T` of the frame spent on alignment.
    pub fn overhead(&self) -> Option<f64> {
        self.frame_len
            .map(|t| (self.b + self.feedback_slots.unwrap_or(0)) as f64 / t as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_must_sum_to_one() {
        let u = |w| User {
            pdf: AngularPdf::uniform(),
            weight: w,
        };
        assert!(Scenario::new(vec![u(0.5), u(0.5)], 2, Regime::Contiguous).is_ok());
        assert!(matches!(
            Scenario::new(vec![u(0.5), u(0.4)], 2, Regime::Contiguous),
            Err(Error::WeightSum { .. })
        ));
        assert!(Scenario::new(vec![u(1.5), u(-0.5)], 2, Regime::Contiguous).is_err());
        assert!(Scenario::new(vec![], 2, Regime::Contiguous).is_err());
        assert!(Scenario::new(vec![u(1.0)], 0, Regime::Contiguous).is_err());
    }

    #[test]
    fn frame_metadata() {
        let s = Scenario::single(AngularPdf::uniform(), 4, Regime::Contiguous).unwrap();
        assert!(s.clone().with_frame(Some(2), Some(5)).is_err());
        let s = s.with_frame(Some(2), Some(20)).unwrap();
        assert_eq!(s.overhead(), Some(0.3));
        assert_eq!(s.with_slots(19).unwrap().frame_len(), None);
    }
}
