mod support;

use support::{commutator_system, fixture};
use zsep::{check_separating, compatible_ordering, find_separating_tuple, Term};

#[test]
fn commuting_matrices() {
    let sys = commutator_system(&fixture("ex35.mat"));
    assert_eq!(sys.nvars(), 84);
    assert_eq!(sys.generators().len(), 126);
    assert!(sys.generators().iter().all(|g| g.degree() == Some(2)));

    let z = sys.tuple(fixture("ex35.z").trim()).unwrap();
    assert_eq!(z.len(), 57);
    let expected: Vec<u64> = fixture("ex35.w").split(',').map(|w| w.trim().parse().unwrap()).collect();
    let out = check_separating(&sys, &z).unwrap();
    let w = out.weights().expect("success");
    for k in 0..84 {
        let want = z.iter().position(|j| j == k).map_or(0, |i| expected[i]);
        assert_eq!(u64::try_from(w.get(k)).unwrap(), want, "x{}", k + 1);
    }

    let sep = find_separating_tuple(&sys, &z, &compatible_ordering(w, &z)).unwrap();
    for (k, f) in &sep.entries {
        assert_eq!(f.leading_term(&sep.ordering).and_then(Term::as_variable), Some(*k));
    }
}

#[test]
fn optimized_and_tracked_on_commuting_matrices() {
    let sys = commutator_system(&fixture("ex35.mat"));
    let z = sys.tuple(fixture("ex35.z").trim()).unwrap();
    assert!(zsep::check_separating_optimized(&sys, &z).unwrap().is_success());
    let sep = zsep::find_separating_tuple_tracked(&sys, &z).unwrap();
    assert_eq!(sep.entries.len(), 57);
    for (k, f) in &sep.entries {
        assert_eq!(f.leading_term(&sep.ordering).and_then(Term::as_variable), Some(*k));
    }
}
