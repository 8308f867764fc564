use plectic::exterior::identities;
use plectic::properties::{run, Settings};

#[test]
fn calculus_identities_hold() {
    for prop in identities::properties() {
        let out = run(&prop, 7, 60, &Settings::default());
        assert!(out.passed(), "{}: {:?}", out.name, out.failure);
    }
}
