//! Algebraic invariants checked on random inputs.

use chordstate::diagram::enumerate_words;
use chordstate::perm::{sigma, sigma_lin, w_st_poly};
use chordstate::state::{gram_matrix, psd_check};
use chordstate::{
    parse_rational, rational_string, Chord, ChordWord, DiagramExpr, Evaluator, GramMatrix, GramSpec,
    GroupAlgebraElement, Guards, Labelling, Partition, Permutation, Rational, RepLabel, Tableau,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const STRANDS: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn chord(strands: usize) -> impl Strategy<Value = Chord> {
    (1..=strands, 1..=strands)
        .prop_filter("distinct endpoints", |(a, b)| a != b)
        .prop_map(|(a, b)| Chord::new(a, b).unwrap())
}

fn word(strands: usize, max_len: usize) -> impl Strategy<Value = ChordWord> {
    prop::collection::vec(chord(strands), 0..=max_len).prop_map(move |c| ChordWord::new(strands, c).unwrap())
}

fn expr(strands: usize) -> impl Strategy<Value = DiagramExpr> {
    prop::collection::vec((word(strands, 3), rational()), 0..=3)
        .prop_map(move |terms| DiagramExpr::from_terms(strands, terms).unwrap())
}

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn algebra(degree: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((perm(degree), rational()), 0..=4)
        .prop_map(move |terms| GroupAlgebraElement::from_terms(degree, terms).unwrap())
}

fn label() -> impl Strategy<Value = RepLabel> {
    prop_oneof![
        Just(RepLabel::Std),
        (1usize..=3).prop_map(RepLabel::Sym),
        (1usize..=3).prop_map(RepLabel::Ext),
        Just(RepLabel::Part(Partition::new(vec![2, 1]).unwrap())),
    ]
}

fn labelling(strands: usize) -> impl Strategy<Value = Labelling> {
    prop::collection::vec(label(), strands).prop_map(Labelling::new)
}

fn standard_tableau() -> impl Strategy<Value = Tableau> {
    (1usize..=4, any::<prop::sample::Index>()).prop_map(|(k, idx)| {
        let all: Vec<Tableau> = Partition::all(k).iter().flat_map(Tableau::standard).collect();
        all[idx.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_monoid_laws(a in word(STRANDS, 3), b in word(STRANDS, 3), c in word(STRANDS, 3)) {
        let id = ChordWord::identity(STRANDS);
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert_eq!(id.compose(&a).unwrap(), a.clone());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_an_involutive_antimorphism(a in word(STRANDS, 3), b in word(STRANDS, 3)) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.compose(&b).unwrap().star(), b.star().compose(&a.star()).unwrap());
    }

    #[test]
    fn word_display_round_trips(a in word(4, 4)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<ChordWord>().unwrap(), a);
    }

    #[test]
    fn expr_product_is_bilinear(x in expr(STRANDS), y in expr(STRANDS), z in expr(STRANDS)) {
        let lhs = x.add(&y).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&z).unwrap().add(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_is_a_star_morphism(
        x in expr(2),
        y in expr(2),
        widths in prop::collection::vec(1usize..=2, 2),
    ) {
        let dx = x.tensor_split(&widths).unwrap();
        let dy = y.tensor_split(&widths).unwrap();
        prop_assert_eq!(x.multiply(&y).unwrap().tensor_split(&widths).unwrap(), dx.multiply(&dy).unwrap());
        prop_assert_eq!(x.star().tensor_split(&widths).unwrap(), dx.star());
    }

    #[test]
    fn split_term_count(a in word(STRANDS, 2), widths in prop::collection::vec(1usize..=3, STRANDS)) {
        let split = a.tensor_split(&widths).unwrap();
        let expected: usize = a.chords().iter().map(|c| widths[c.i() - 1] * widths[c.j() - 1]).product();
        let total: Rational = split.terms().map(|(_, c)| c.clone()).sum();
        prop_assert_eq!(total, Rational::from_integer(expected.into()));
        prop_assert!(split.terms().all(|(w, _)| w.len() == a.len()));
    }

    #[test]
    fn sigma_is_a_star_morphism(x in expr(STRANDS), y in expr(STRANDS)) {
        let sx = sigma_lin(&x);
        let sy = sigma_lin(&y);
        prop_assert_eq!(sigma_lin(&x.multiply(&y).unwrap()), sx.multiply(&sy).unwrap());
        prop_assert_eq!(sigma_lin(&x.star()), sx.star());
    }

    #[test]
    fn sigma_of_word_is_inverse_under_star(a in word(4, 5)) {
        prop_assert_eq!(sigma(&a.star()), sigma(&a).inverse());
    }

    #[test]
    fn cycle_count_is_a_class_function(p in perm(6), q in perm(6)) {
        let conj = q.compose(&p).unwrap().compose(&q.inverse()).unwrap();
        prop_assert_eq!(conj.cycle_type(), p.cycle_type());
        prop_assert_eq!(p.inverse().cycle_count(), p.cycle_count());
        prop_assert_eq!(p.compose(&q).unwrap().cycle_count(), q.compose(&p).unwrap().cycle_count());
    }

    #[test]
    fn permutation_display_round_trips(p in perm(7)) {
        prop_assert_eq!(Permutation::parse_cycles(&p.to_string(), 7).unwrap(), p);
    }

    #[test]
    fn sign_is_multiplicative(p in perm(5), q in perm(5)) {
        prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
    }

    #[test]
    fn standard_trace_is_star_invariant(x in algebra(4)) {
        prop_assert_eq!(w_st_poly(&x.star()), w_st_poly(&x));
    }

    #[test]
    fn product_support_is_bounded(x in algebra(4), y in algebra(4)) {
        prop_assert!(x.multiply(&y).unwrap().len() <= x.len() * y.len());
    }

    #[test]
    fn algebra_product_is_associative(x in algebra(3), y in algebra(3), z in algebra(3)) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rational_text_round_trips(q in rational()) {
        prop_assert_eq!(parse_rational(&rational_string(&q)).unwrap(), q);
    }

    #[test]
    fn label_text_round_trips(l in label()) {
        prop_assert_eq!(l.to_string().parse::<RepLabel>().unwrap(), l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetriser_is_idempotent(t in standard_tableau()) {
        let c = t.symmetriser().unwrap();
        prop_assert_eq!(c.multiply(&c).unwrap(), c);
    }

    #[test]
    fn random_elements_are_class_like(lab in labelling(2), seeds in prop::collection::vec((any::<prop::sample::Index>(), rational()), 1..=4)) {
        let ev = Evaluator::new(lab).unwrap();
        let c = ev.symmetriser().clone();
        let degree = c.degree();
        let perms = all_perms(degree);
        let y = GroupAlgebraElement::from_terms(
            degree,
            seeds.into_iter().map(|(i, q)| (perms[i.index(perms.len())].clone(), q)),
        ).unwrap();
        prop_assert_eq!(
            w_st_poly(&c.multiply(&y).unwrap()),
            w_st_poly(&y.multiply(&c).unwrap())
        );
        prop_assert_eq!(ev.functional(&y).unwrap(), w_st_poly(&c.multiply(&y).unwrap()));
    }

    #[test]
    fn gram_form_of_products_is_nonnegative(x in expr(2), lab in prop::sample::select(vec!["std,std", "sym:2,ext:2", "ext:2,std"]), n in 2u32..=3) {
        let lab = Labelling::parse(lab).unwrap();
        let ev = Evaluator::new(lab).unwrap();
        let value = ev.weight(&x.multiply(&x.star()).unwrap(), n).unwrap();
        prop_assert!(!value.at(n).unwrap().is_negative());
    }

    #[test]
    fn psd_check_accepts_gram_products(b in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=4)) {
        // M = B Bᵀ is PSD with rank ≤ 3.
        let rows: Vec<Vec<Rational>> = b.iter()
            .map(|r| b.iter().map(|s| Rational::from_integer(r.iter().zip(s).map(|(x, y)| x * y).sum::<i64>().into())).collect())
            .collect();
        let m = GramMatrix::from_rows(rows).unwrap();
        let out = psd_check(&m).unwrap();
        prop_assert!(out.psd);
        prop_assert!(out.rank <= 3);
        prop_assert!(out.pivots.iter().all(|p| !p.is_negative()));
        prop_assert_eq!(out.pivots.iter().filter(|p| p.is_positive()).count(), out.rank);
    }

    #[test]
    fn psd_witness_is_sound(entries in prop::collection::vec(-4i64..=4, 10)) {
        let mut rows = vec![vec![Rational::zero(); 4]; 4];
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                let v = Rational::from_integer(it.next().unwrap().into());
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        let m = GramMatrix::from_rows(rows).unwrap();
        let out = psd_check(&m).unwrap();
        if let Some(w) = &out.witness {
            prop_assert!(!out.psd);
            prop_assert!(m.quadratic_form(w).unwrap().is_negative());
        } else {
            prop_assert!(out.psd);
            for k in 1..=4 {
                prop_assert!(psd_check(&m.leading_principal(k)).unwrap().psd);
            }
        }
    }
}

fn all_perms(degree: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if left.is_empty() {
            out.push(Permutation::from_images(prefix).unwrap());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=degree).collect(), &mut out);
    out
}

#[test]
fn gram_matrices_nest_by_depth() {
    let guards = Guards::DEFAULT;
    for lab in ["std,std", "sym:2,ext:2"] {
        let lab = Labelling::parse(lab).unwrap();
        let small = GramSpec::new(2, 1, lab.clone(), 3).unwrap();
        let large = GramSpec::new(2, 2, lab, 3).unwrap();
        let (bs, ms) = gram_matrix(&small, &guards).unwrap();
        let (bl, ml) = gram_matrix(&large, &guards).unwrap();
        assert_eq!(&bl[..bs.len()], &bs[..]);
        assert_eq!(ml.leading_principal(ms.dim()), ms);
    }
}

#[test]
fn enumeration_is_prefix_closed() {
    let short = enumerate_words(3, 1);
    let long = enumerate_words(3, 2);
    assert_eq!(&long[..short.len()], &short[..]);
}
