use braidcov_core::enumeration::*;
use braidcov_core::presentations::*;

fn order(p: &Presentation, s: Strategy) -> usize {
    coset_enumerate_with(p, &[], DEFAULT_MAX_COSETS, s).unwrap().cosets
}

#[test]
fn orders_both_strategies() {
    let cases: Vec<(Presentation, usize)> = vec![
        (van_buskirk(1).unwrap(), 2),
        (van_buskirk(2).unwrap(), 16),
        (sphere_presentation(2).unwrap(), 2),
        (sphere_presentation(3).unwrap(), 12),
        (finite_group_presentation(FiniteFamily::Dic(3)).unwrap(), 12),
        (finite_group_presentation(FiniteFamily::TStar).unwrap(), 24),
        (finite_group_presentation(FiniteFamily::OStar).unwrap(), 48),
        (finite_group_presentation(FiniteFamily::IStar).unwrap(), 120),
        (finite_group_presentation(FiniteFamily::Alt5).unwrap(), 60),
        (finite_group_presentation(FiniteFamily::Dih(5)).unwrap(), 10),
        (trivial_presentation(), 1),
    ];
    for (p, n) in cases {
        assert_eq!(order(&p, Strategy::Hlt), n, "{} hlt", p.name);
        assert_eq!(order(&p, Strategy::Felsch), n, "{} felsch", p.name);
    }
}

fn table(p: &Presentation) -> GroupTable {
    materialize(p, DEFAULT_MAX_COSETS).unwrap()
}

fn family(f: FiniteFamily) -> GroupTable {
    table(&finite_group_presentation(f).unwrap())
}

#[test]
fn quaternion_tables() {
    let b2 = table(&van_buskirk(2).unwrap());
    assert_eq!(b2.order, 16);
    assert!(b2.is_associative());
    let s1 = b2.element_of(&"s1".parse().unwrap()).unwrap();
    assert_eq!(b2.element_order(s1), 4);
    assert!(isomorphic(&b2, &family(FiniteFamily::Dic(4))).is_some());

    let pure = pure_elements(&b2, 2);
    assert_eq!(pure.len(), 8);
    let p2 = b2.subgroup(&pure);
    assert!(p2.is_associative());
    assert!(isomorphic(&p2, &family(FiniteFamily::Q8)).is_some());

    let q8 = family(FiniteFamily::Dic(2));
    let involutions = (0..8).filter(|&e| q8.element_order(e) == 2).count();
    assert_eq!(involutions, 1);
    assert_eq!(table(&trivial_presentation()).order, 1);
}

#[test]
fn dicyclic_and_dihedral_are_distinguished() {
    let dic = family(FiniteFamily::Dic(3));
    let dih = family(FiniteFamily::Dih(6));
    assert_eq!(dic.order, 12);
    assert_eq!(dih.order, 12);
    assert!(isomorphic(&dic, &dih).is_none());
    assert!(isomorphic(&dih, &dic).is_none());
}

#[test]
fn isomorphism_is_reflexive_and_symmetric() {
    let mut corpus = vec![family(FiniteFamily::Cyclic(2)), family(FiniteFamily::Q8)];
    corpus.extend((3..=10).map(|m| family(FiniteFamily::Dic(m))));
    corpus.extend((4..=10).map(|k| family(FiniteFamily::Dih(k))));
    corpus.extend([FiniteFamily::TStar, FiniteFamily::OStar, FiniteFamily::IStar].map(family));
    for a in &corpus {
        let iso = isomorphic(a, a).expect("reflexive");
        assert!(is_homomorphism(a, a, &iso.map));
    }
    for a in &corpus {
        for b in &corpus {
            assert_eq!(isomorphic(a, b).is_some(), isomorphic(b, a).is_some());
        }
    }
}

#[test]
fn central_quotients() {
    let (center, q) = center_and_quotient(&family(FiniteFamily::Dic(4))).unwrap();
    assert_eq!(center.len(), 2);
    assert!(isomorphic(&q, &family(FiniteFamily::Dih(4))).is_some());
    let (_, q) = center_and_quotient(&family(FiniteFamily::OStar)).unwrap();
    assert!(isomorphic(&q, &family(FiniteFamily::Sym4)).is_some());
    let (_, q) = center_and_quotient(&family(FiniteFamily::IStar)).unwrap();
    assert!(isomorphic(&q, &family(FiniteFamily::Alt5)).is_some());
    assert_eq!(
        center_and_quotient(&family(FiniteFamily::Cyclic(3))).unwrap_err(),
        EnumerationError::NoCentralInvolution
    );
}

#[test]
fn table_facts_at_two_strands() {
    let b2 = table(&van_buskirk(2).unwrap());
    let a = b2.element_of(&named_element(NamedElement::A, 2).unwrap()).unwrap();
    let delta = b2.element_of(&named_element(NamedElement::Delta, 2).unwrap()).unwrap();
    assert_eq!(b2.element_order(a), 8);
    assert_eq!(b2.element_order(delta), 4);
    assert_eq!(b2.pow(a, 4), b2.pow(delta, 2));
    assert_eq!(b2.generated(&[a, delta]).len(), 16);
    let twist = b2.element_of(&named_element(NamedElement::FullTwist, 2).unwrap()).unwrap();
    let involutions: Vec<u32> = (0..16).filter(|&e| b2.element_order(e) == 2).collect();
    assert_eq!(involutions, vec![twist]);
}

/// Invariant factors from gcds of k×k minors: d_k / d_{k-1}.
fn determinantal_invariants(m: &[Vec<i128>], cols: usize) -> Vec<u64> {
    let mut rows: Vec<Vec<i128>> = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    rows.sort();
    rows.dedup();
    let mut prev = 1i128;
    let mut out = Vec::new();
    let mut rank = 0;
    for k in 1..=rows.len().min(cols) {
        let mut g = 0i128;
        for_each_subset(rows.len(), k, &mut |ri| {
            if g == 1 {
                return;
            }
            for_each_subset(cols, k, &mut |ci| {
                if g == 1 {
                    return;
                }
                let sub: Vec<Vec<i128>> = ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j]).collect()).collect();
                g = gcd(g, det(sub));
            });
        });
        if g == 0 {
            break;
        }
        rank = k;
        out.push((g / prev) as u64);
        prev = g;
    }
    let mut factors: Vec<u64> = out.into_iter().filter(|&d| d != 1).collect();
    factors.extend(std::iter::repeat(0).take(cols - rank));
    factors
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Bareiss fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[test]
fn abelian_invariants_match_minor_oracle() {
    for n in 2..=6 {
        let p = van_buskirk(n).unwrap();
        assert_eq!(abelianization(&p).0, vec![2, 2], "n={n}");
        assert_eq!(determinantal_invariants(&relation_matrix(&p), p.rank()), vec![2, 2], "n={n}");
    }
    for m in 3..=6u32 {
        let p = sphere_presentation(m).unwrap();
        let expect = vec![2 * (m as u64 - 1)];
        assert_eq!(abelianization(&p).0, expect);
        assert_eq!(determinantal_invariants(&relation_matrix(&p), p.rank()), expect);
    }
    assert_eq!(abelianization(&annulus_presentation(1).unwrap()).0, vec![0]);
    assert_eq!(abelianization(&annulus_presentation(3).unwrap()).0, vec![0, 0]);
    assert!(abelianization(&trivial_presentation()).0.is_empty());
}

#[test]
fn overflow_is_reported() {
    let p = annulus_presentation(1).unwrap();
    assert_eq!(coset_enumerate(&p, &[], 50).unwrap_err(), EnumerationError::Overflow(50));
    let p = van_buskirk(3).unwrap();
    assert!(matches!(coset_enumerate(&p, &[], 200), Err(EnumerationError::Overflow(_))));
}

#[test]
fn subgroup_index() {
    let p = van_buskirk(2).unwrap();
    let t = coset_enumerate(&p, &["s1".parse().unwrap()], DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(t.cosets, 4);
    assert!(t.is_closed(&p));
}
