use torsec::arith::rational::Rational;
use torsec::ngon::{residuals, solve_valuations};

fn closed(n: i64, i: i64) -> Rational {
    Rational::new(n * n - 1, 12) - Rational::new(i * (n - i), 2)
}

#[test]
fn section_profiles_for_odd_levels() {
    for n in (5..=99i64).step_by(2) {
        let mut r = vec![-1i64; n as usize];
        r[0] = n - 1;
        let prof = solve_valuations(n as usize, &r).unwrap();
        for i in 0..n {
            assert_eq!(prof.n[i as usize], closed(n, i), "N={n} i={i}");
        }
        let min = prof.n.iter().min().unwrap().clone();
        assert_eq!(min, Rational::new(-(n * n - 1), 24), "N={n}");
        let at: Vec<i64> = (0..n).filter(|&i| prof.n[i as usize] == min).collect();
        assert_eq!(at, vec![(n - 1) / 2, (n + 1) / 2]);
        assert!(residuals(&r, &prof.n).iter().all(|x| x == &Rational::zero()));
    }
}

#[test]
fn h_profiles_for_odd_levels() {
    for n in (5..=99i64).step_by(2) {
        let mut r = vec![n; n as usize];
        r[0] = -n * (n - 1);
        let prof = solve_valuations(n as usize, &r).unwrap();
        for i in 0..n {
            let want = Rational::new(-n * (n * n - 1), 12) + Rational::new(n * i * (n - i), 2);
            assert_eq!(prof.n[i as usize], want, "N={n} i={i}");
        }
        assert!(prof.integral);
    }
}
