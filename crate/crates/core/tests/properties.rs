//! Property tests over small random inputs.

use std::collections::BTreeSet;
use std::sync::Arc;

use gmdh_logic::analysis::pruning_gap;
use gmdh_logic::classic::{synthesize_classic, ClassicConfig, Freedom};
use gmdh_logic::collective::{Chi0, Collective};
use gmdh_logic::dataset::{
    binarize, quantize_feature, split_ab, BooleanLearningSet, FeatureKind, FeatureSpec, LearningSet,
    QuantizationSpec, SplitStrategy,
};
use gmdh_logic::gates::GateId;
use gmdh_logic::model::ModelFile;
use gmdh_logic::network::Expr;
use gmdh_logic::render::{select_rules, RuleSelector};
use gmdh_logic::synthesis::{synthesize, SynthesisConfig};
use proptest::prelude::*;

/// Rows and labels with both classes present.
fn boolean_set(max_m: usize, max_n: usize) -> impl Strategy<Value = (Vec<Vec<bool>>, Vec<bool>)> {
    (2..=max_m, 4..=max_n).prop_flat_map(|(m, n)| {
        (prop::collection::vec(prop::collection::vec(any::<bool>(), m), n), prop::collection::vec(any::<bool>(), n))
            .prop_map(|(rows, mut labels)| {
                labels[0] = true;
                labels[1] = false;
                (rows, labels)
            })
    })
}

fn bset((rows, labels): &(Vec<Vec<bool>>, Vec<bool>)) -> BooleanLearningSet {
    BooleanLearningSet::from_rows(rows, labels).unwrap()
}

/// A random left-deep expression over m sensors.
fn expr(m: usize) -> impl Strategy<Value = Arc<Expr>> {
    let pair = (0..m - 1, 0..10u8).prop_flat_map(move |(j, g)| (Just(j), j + 1..m, Just(g)));
    (pair, prop::collection::vec((0..m, 0..10u8), 0..4)).prop_map(|((j, k, g), ext)| {
        let mut e = Expr::pair(GateId::new(g).unwrap(), j, k).unwrap();
        for (k, g) in ext {
            e = Expr::extend(&e, GateId::new(g).unwrap(), k);
        }
        e
    })
}

fn exhaustive_errors(values: &[f64], labels: &[bool]) -> usize {
    let mut cuts: Vec<f64> = values.to_vec();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut candidates = vec![cuts[0] - 1.0];
    candidates.extend(cuts.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    candidates
        .into_iter()
        .map(|u| {
            let e = values.iter().zip(labels).filter(|(&x, &y)| (x >= u) != y).count();
            e.min(values.len() - e)
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantizer_matches_exhaustive_scan(
        data in prop::collection::vec((-40i32..40, any::<bool>()), 2..50)
    ) {
        let values: Vec<f64> = data.iter().map(|(v, _)| *v as f64 / 4.0).collect();
        let labels: Vec<bool> = data.iter().map(|(_, y)| *y).collect();
        let t = quantize_feature(&values, &labels).unwrap();
        prop_assert_eq!(t.train_errors, exhaustive_errors(&values, &labels));
        let actual = values.iter().zip(&labels).filter(|(&x, &y)| t.apply(x) != y).count();
        prop_assert_eq!(actual, t.train_errors);
    }

    #[test]
    fn binarized_columns_keep_the_quantizer_error(
        data in prop::collection::vec((0u8..20, 0u8..20, any::<bool>()), 4..40)
    ) {
        let mut rows: Vec<Vec<f64>> = data.iter().map(|(a, b, _)| vec![*a as f64, (*b % 2) as f64]).collect();
        let mut labels: Vec<bool> = data.iter().map(|(_, _, y)| *y).collect();
        labels[0] = true;
        labels[1] = false;
        rows[0][1] = 0.0;
        rows[1][1] = 1.0;
        let features = vec![
            FeatureSpec::new("level", FeatureKind::Quantitative),
            FeatureSpec::new("flag", FeatureKind::Boolean),
        ];
        let set = LearningSet::new(features, rows, labels.clone()).unwrap();
        let b = binarize(&set, None).unwrap();
        let t = b.quantization().threshold(0).unwrap();
        prop_assert_eq!(b.column(0).hamming(b.labels()), t.train_errors);
        let pos = labels.iter().filter(|&&y| y).count();
        prop_assert!(t.train_errors <= pos.min(labels.len() - pos));
        // Boolean columns pass through unchanged
        let flags: Vec<bool> = set.rows().iter().map(|r| r[1] == 1.0).collect();
        prop_assert_eq!(b.column(1).iter().collect::<Vec<_>>(), flags);
        prop_assert!(b.quantization().threshold(1).is_none());
    }

    #[test]
    fn split_is_a_balanced_partition(n in 4usize..200, seed in any::<u64>(), random in any::<bool>()) {
        let strategy = if random { SplitStrategy::Random { seed } } else { SplitStrategy::Interleave };
        let (a, b) = split_ab(n, strategy).unwrap();
        prop_assert_eq!(a.len(), n.div_ceil(2));
        prop_assert_eq!(b.len(), n / 2);
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]) && b.windows(2).all(|w| w[0] < w[1]));
        let all: BTreeSet<usize> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(all, (0..n).collect::<BTreeSet<_>>());
        prop_assert_eq!(split_ab(n, strategy).unwrap(), (a, b));
    }

    #[test]
    fn packed_evaluation_matches_row_by_row(
        (data, e) in boolean_set(6, 140).prop_flat_map(|d| {
            let m = d.0[0].len();
            (Just(d), expr(m))
        })
    ) {
        let b = bset(&data);
        let packed = e.outputs(&b).unwrap();
        for (i, row) in data.0.iter().enumerate() {
            prop_assert_eq!(packed.get(i), e.eval(row).unwrap());
        }
        prop_assert_eq!(e.to_string().parse::<Expr>().unwrap(), (*e).clone());
    }

    #[test]
    fn row_order_does_not_change_survivors(data in boolean_set(5, 16), rot in 1usize..15) {
        let (rows, labels) = &data;
        let n = rows.len();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + rot) % n).collect();
        prop_assume!(perm.iter().collect::<BTreeSet<_>>().len() == n);
        let permuted = BooleanLearningSet::from_rows(
            &perm.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>(),
            &perm.iter().map(|&i| labels[i]).collect::<Vec<_>>(),
        ).unwrap();
        let cfg = SynthesisConfig { max_layers: 4, ..Default::default() };
        let x = synthesize(&bset(&data), &cfg).unwrap();
        let y = synthesize(&permuted, &cfg).unwrap();
        prop_assert_eq!(&x.feature_mus, &y.feature_mus);
        prop_assert_eq!(x.layers.len(), y.layers.len());
        for (lx, ly) in x.layers.iter().zip(&y.layers) {
            let sx: Vec<(usize, String)> = lx.survivors.iter().map(|c| (c.mu, c.signature())).collect();
            let sy: Vec<(usize, String)> = ly.survivors.iter().map(|c| (c.mu, c.signature())).collect();
            prop_assert_eq!(sx, sy);
        }
    }

    #[test]
    fn wider_freedom_never_raises_the_second_layer_minimum(data in boolean_set(5, 24)) {
        let b = bset(&data);
        let narrow = synthesize_classic(&b, &ClassicConfig { freedom: Freedom::Fraction(0.4), max_layers: 2, ..Default::default() });
        let wide = synthesize_classic(&b, &ClassicConfig { freedom: Freedom::Fraction(1.0), max_layers: 2, ..Default::default() });
        let (narrow, wide) = match (narrow, wide) {
            (Ok(n), Ok(w)) => (n, w),
            (n, w) => return Err(TestCaseError::fail(format!("{:?} {:?}", n.err(), w.err()))),
        };
        prop_assert_eq!(narrow.cr_trace[0], wide.cr_trace[0]);
        if narrow.cr_trace.len() > 1 && wide.cr_trace.len() > 1 {
            prop_assert!(wide.cr_trace[1] <= narrow.cr_trace[1]);
        }
    }

    #[test]
    fn lower_threshold_keeps_every_plausible_decision(
        members in prop::collection::btree_set((0usize..4, 0u8..10), 1..12),
        row in prop::collection::vec(any::<bool>(), 5),
        a in 1u64..10, b in 1u64..10,
    ) {
        let exprs: Vec<Arc<Expr>> = members.iter().map(|&(j, g)| Expr::pair(GateId::new(g).unwrap(), j, 4).unwrap()).collect();
        let (lo, hi) = (Chi0::new(a.min(b), 10).unwrap(), Chi0::new(a.max(b), 10).unwrap());
        let strict = Collective::new(exprs.clone(), 5, hi).unwrap().vote(&row).unwrap();
        let loose = Collective::new(exprs, 5, lo).unwrap().vote(&row).unwrap();
        prop_assert_eq!(strict.label, loose.label);
        prop_assert!(!strict.plausible || loose.plausible);
    }

    #[test]
    fn rules_agree_with_votes(data in boolean_set(4, 16)) {
        let b = bset(&data);
        let res = synthesize(&b, &SynthesisConfig { max_layers: 3, ..Default::default() }).unwrap();
        let members: Vec<Arc<Expr>> = res.members().iter().map(|c| Arc::clone(&c.expr)).collect();
        prop_assume!(!members.is_empty() && members.iter().all(|e| !matches!(**e, Expr::Leaf(_))));
        let coll = Collective::new(members, b.m(), Chi0::default()).unwrap();
        let q = QuantizationSpec::identity(b.m());
        let rules = select_rules(&coll, &RuleSelector::All { cap: 1 << 10 }, b.features(), &q).unwrap();
        let relevant: Vec<usize> = coll.features_used().into_iter().collect();
        prop_assert_eq!(rules.len(), 1 << relevant.len());
        for rule in &rules {
            let bits: Vec<bool> = rule.literals.iter().map(|l| l.value).collect();
            prop_assert_eq!(rule.literals.iter().map(|l| l.feature).collect::<Vec<_>>(), relevant.clone());
            let vote = coll.vote(&coll.expand(&relevant, &bits)).unwrap();
            prop_assert_eq!(vote, rule.decision);
        }
    }

    #[test]
    fn greedy_never_beats_the_oracle(data in boolean_set(4, 12)) {
        let b = bset(&data);
        let gap = pruning_gap(&b, 2).unwrap();
        for row in gap.per_depth.iter().chain([&gap.terminal]) {
            prop_assert!(row.synthesis_mu >= row.oracle_mu, "{:?}", row);
            prop_assert_eq!(row.gap, row.synthesis_mu - row.oracle_mu);
        }
    }

    #[test]
    fn model_text_round_trips(data in boolean_set(5, 20)) {
        let b = bset(&data);
        let cfg = SynthesisConfig { max_layers: 3, ..Default::default() };
        let res = synthesize(&b, &cfg).unwrap();
        let model = ModelFile::from_exterior(&b, &res, cfg, Chi0::default());
        let text = model.to_text();
        let back = ModelFile::from_text(&text).unwrap();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(back.to_text(), text);
    }
}
