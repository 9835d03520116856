use lerch_core::symmetry::{
    classify_zeros, counterpart_test, deep_deviation, theorem1_sum, twin_disc_report,
    ClassifyOptions, ZeroClass,
};
use lerch_core::zeros::{scan_zeros, Evaluator, ScanConfig};
use lerch_core::{LerchParams, PrecisionPolicy, RationalParam};

fn trunc2(x: f64) -> f64 {
    (x * 100.0).floor() / 100.0
}

#[test]
fn counterparts_of_the_first_zeros() {
    let l = RationalParam::new(3, 4).unwrap();
    let p = PrecisionPolicy::digits(30).unwrap();
    let zeros = scan_zeros(&LerchParams::equal(l), &ScanConfig::new(0.0, 24.0)).unwrap();
    let got: Vec<f64> = zeros
        .iter()
        .map(|z| counterpart_test(l, z, &p).unwrap())
        .map(|c| {
            assert!(!c.strict_symmetric);
            trunc2(c.counterpart_abs)
        })
        .collect();
    assert_eq!(got, vec![2.73, 0.13, 0.48, 1.15]);
}

#[test]
fn first_off_line_pair() {
    let l = RationalParam::new(3, 4).unwrap();
    let params = LerchParams::equal(l);
    let p = PrecisionPolicy::digits(30).unwrap();
    let zeros = scan_zeros(&params, &ScanConfig::new(118.0, 123.0)).unwrap();
    let (cls, rep) = classify_zeros(l, 123.0, &zeros, ClassifyOptions::default());
    assert_eq!((rep.n2, rep.unmatched), (2, 0));
    let off: Vec<usize> = cls
        .iter()
        .filter(|c| c.klass == ZeroClass::OffLine)
        .map(|c| c.zero_index)
        .collect();
    let mut values: Vec<(f64, f64)> = off
        .iter()
        .map(|&i| {
            (
                zeros[i].beta_f64(),
                counterpart_test(l, &zeros[i], &p).unwrap().counterpart_abs,
            )
        })
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert_eq!(trunc2(values[0].0.abs()), 0.10);
    assert_eq!(trunc2(values[1].0), 1.10);
    assert_eq!(trunc2(values[0].1), 23.49);
    assert_eq!(trunc2(values[1].1), 3.94);
    assert_eq!(trunc2(zeros[off[0]].gamma_f64()), 120.59);

    let eval = Evaluator::new(&params, p).unwrap();
    let twins = twin_disc_report(&eval, &zeros, &cls, 0.05, None);
    assert_eq!(twins.len(), 2);
    for t in &twins {
        let a = t.result.as_ref().unwrap();
        assert_eq!((a.count_right, a.count_left), (1, 1));
    }
}

#[test]
fn strict_symmetry_at_one_half() {
    let l = RationalParam::new(1, 2).unwrap();
    let p = PrecisionPolicy::digits(30).unwrap();
    let zeros = scan_zeros(&LerchParams::equal(l), &ScanConfig::new(0.0, 20.0)).unwrap();
    assert!(!zeros.is_empty());
    for z in &zeros {
        assert!(counterpart_test(l, z, &p).unwrap().strict_symmetric);
    }
}

#[test]
fn first_deep_deviation() {
    let r = deep_deviation(&LerchParams::parse("3/4", "3/4").unwrap(), 1, 60).unwrap();
    let m = r.muller_deviation().to_f64();
    let c = r.contour_deviation().to_f64();
    assert!((m / 1e-14 - 7.16).abs() < 0.005, "{m:e}");
    assert!((c / 1e-14 - 7.16).abs() < 0.005, "{c:e}");
    assert!(r.agreement < 1e-30);
}

#[test]
fn average_symmetry_unequal_parameters() {
    let params = LerchParams::parse("1/3", "2/3").unwrap();
    let zeros = scan_zeros(&params, &ScanConfig::new(0.0, 100.0)).unwrap();
    let s = theorem1_sum(&params, &zeros, 100.0).unwrap();
    assert!((s.main_term - 100.0 / (4.0 * std::f64::consts::PI) * 2f64.ln()).abs() < 1e-12);
    assert!(s.within(), "{s:?}");
}
