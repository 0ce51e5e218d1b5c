#[test]
fn dbg_possibility_after_fixes() {
    use zxft::builders::*;
    for (name, (d, meta)) in [
        ("fbqc", fbqc(PatchSpec::new(2, 2)).unwrap()),
        ("flobqc", flobqc(PatchSpec::new(2, 2)).unwrap()),
    ] {
        let mut bad = 0;
        for seed in 0..20 {
            let record = meta.reading.run(seed);
            let t = zxft::oracle::dense_contract(&d, &record).unwrap();
            if t.max_abs() < 1e-9 { bad += 1; }
        }
        println!("{name}: impossible records {bad}/20");
    }
}
