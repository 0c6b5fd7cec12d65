use crate::error::{HellyError, Result};
use crate::hsystem::{Family, MemberId};

/// At most `k` members whose intersection has the same offsets as the whole family.
///
/// For each ordering the tie-broken minimum is kept; ids come back in family order.
pub fn strong_helly_witness(family: &Family) -> Result<Vec<MemberId>> {
    if family.is_empty() {
        return Err(HellyError::Empty("strong Helly witness of an empty family"));
    }
    let k = family.system().k();
    let mut keep: Vec<usize> = (0..k)
        .map(|i| family.argmin(i).expect("nonempty"))
        .collect();
    keep.sort_unstable();
    keep.dedup();
    Ok(keep.into_iter().map(|p| family.id(p).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsystem::AxisBox;

    #[test]
    fn interval_example() {
        let f = Family::from_boxes(&[
            AxisBox::from_intervals(&[(0, 5)]).unwrap(),
            AxisBox::from_intervals(&[(1, 4)]).unwrap(),
            AxisBox::from_intervals(&[(2, 6)]).unwrap(),
        ])
        .unwrap();
        let w = strong_helly_witness(&f).unwrap();
        assert_eq!(w, vec![MemberId::from("b1"), MemberId::from("b2")]);
        let sub = f.subfamily_by_ids(&w).unwrap();
        assert_eq!(sub.intersection().unwrap(), f.intersection().unwrap());
    }

    #[test]
    fn empty_family_rejected() {
        let sys = crate::hsystem::canonical_box_system(2).unwrap();
        assert!(strong_helly_witness(&Family::empty(sys)).is_err());
    }
}
