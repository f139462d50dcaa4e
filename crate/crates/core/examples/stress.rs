//! Ad-hoc stress driver: larger random inputs than the test suites use.
use intermute::sampling::{random_constant_free_formula, random_term};
use intermute::semantics::{eval_mat, expand_to_lattice, lattice_reduce};
use intermute::splitting::{factor_split, splitting_normal_form};
use intermute::sterm::{random_strict_set_term, strict_rel, strict_type, Mode};
use intermute::strict::{try_delete, Conn, FormSeq};
use intermute::term::{validate_in_theory, Theory};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = StdRng::seed_from_u64(777);
    let letters = ["p", "q", "r", "s", "t", "u"];
    let mut reduced = 0;
    for i in 0..400 {
        let src = random_constant_free_formula(&mut rng, &letters, 7);
        let f = random_term(&mut rng, &src, Theory::SCk, 8);
        let expanded = expand_to_lattice(&f, &mut rng).expect("expand");
        match lattice_reduce(&expanded) {
            Ok(Some(out)) => {
                assert!(validate_in_theory(&out, Theory::SCk), "case {i}");
                assert_eq!(
                    eval_mat(&out).unwrap(),
                    eval_mat(&expanded).unwrap(),
                    "case {i}"
                );
                reduced += 1;
            }
            Ok(None) => panic!("case {i}: expansion lost bijectivity"),
            Err(e) => panic!("case {i}: {e}\nterm {expanded}"),
        }
    }
    println!("lattice stress: {reduced}/400 reduced");

    // deeper splitting stress with nested groups up to 10 letters
    let mut done = 0;
    for i in 0..400 {
        let n = rng.random_range(4..=10usize);
        let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
        let mut groups: Vec<FormSeq> = Vec::new();
        let mut rest = names.as_slice();
        while !rest.is_empty() {
            let take = rng.random_range(1..=4usize).min(rest.len());
            let (here, tail) = rest.split_at(take);
            rest = tail;
            let leaves: Vec<FormSeq> = here.iter().map(|p| FormSeq::Leaf(p.clone())).collect();
            let g = if leaves.len() >= 3 && rng.random_bool(0.4) {
                FormSeq::node(
                    Conn::Conj,
                    vec![
                        FormSeq::node(Conn::Disj, leaves[..2].to_vec()),
                        FormSeq::node(Conn::Conj, leaves[2..].to_vec()),
                    ],
                )
            } else {
                FormSeq::node(Conn::Conj, leaves)
            };
            groups.push(g);
        }
        if groups.len() < 2 {
            continue;
        }
        let x = FormSeq::node(Conn::Disj, groups.clone()).sorted();
        let FormSeq::Node(Conn::Disj, kids) = &x else { continue };
        let t = random_strict_set_term(&mut rng, &x, 7);
        let cut = rng.random_range(1..kids.len());
        let x1 = FormSeq::node(Conn::Disj, kids[..cut].to_vec());
        let x2 = FormSeq::node(Conn::Disj, kids[cut..].to_vec());
        let (f1, f2) = factor_split(&t, &x1, &x2).unwrap_or_else(|e| panic!("case {i}: {e}\n{t}"));
        let glued = intermute::sterm::st_comp(f2.clone(), f1.clone());
        assert_eq!(
            strict_rel(&glued, Mode::Set).unwrap(),
            strict_rel(&t, Mode::Set).unwrap(),
            "case {i}"
        );
        assert_eq!(f1.ck_count() + f2.ck_count(), t.ck_count(), "case {i}");
        let tgt = strict_type(&t, Mode::Set).unwrap().1;
        let y1 = try_delete(&tgt, &x2.letters()).unwrap().sorted();
        let y2 = try_delete(&tgt, &x1.letters()).unwrap().sorted();
        let nf = splitting_normal_form(&f2, &y1, &y2).unwrap();
        assert_eq!(nf, splitting_normal_form(&nf, &y1, &y2).unwrap(), "case {i}");
        done += 1;
    }
    println!("splitting stress: {done} cases");
}
