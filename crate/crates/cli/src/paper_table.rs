//! Golden values of the vector model, recomputed from scratch.

use num_complex::Complex64;
use spinvec::analysis::{component_moments, correlation_matrix, magnitude_sq};
use spinvec::composite::dense_j_squared;
use spinvec::linalg::I;
use spinvec::spin_ops::build_component;
use spinvec::{
    coupled_state, effective_unit, noise_budget, pair_correlation, single_spin_report, stretched_state,
    total_component, total_j_squared, two_spin_state, vector_sum_report, Axis, ComplexMatrix, Result,
    SpinQuantumNumber, SpinSystem,
};

use crate::report::{PaperItem, PaperTable};

struct Table {
    tolerance: f64,
    items: Vec<PaperItem>,
}

impl Table {
    fn push(&mut self, id: &str, description: impl Into<String>, expected: f64, computed: f64) {
        let delta = (computed - expected).abs();
        self.items.push(PaperItem {
            id: id.to_string(),
            description: description.into(),
            expected,
            computed,
            delta,
            pass: delta <= self.tolerance,
        });
    }

    fn push_vector(&mut self, id: &str, description: &str, expected: [f64; 3], computed: [f64; 3]) {
        for axis in Axis::ALL {
            let k = axis.index();
            self.push(
                &format!("{id}.{axis}"),
                format!("{description}, {axis} entry"),
                expected[k],
                computed[k],
            );
        }
    }
}

pub fn run(tolerance: f64) -> Result<PaperTable> {
    let mut t = Table {
        tolerance,
        items: Vec::new(),
    };
    let half = SpinQuantumNumber::HALF;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;

    // Single spin-1/2 pointing up.
    let up = single_spin_report(half, 1)?;
    t.push("half.jz", "spin-1/2 up: <S_z>", 0.5, up.choice_a[2]);
    t.push("half.jx", "spin-1/2 up: <S_x>", 0.0, up.choice_a[0]);
    t.push("half.jy", "spin-1/2 up: <S_y>", 0.0, up.choice_a[1]);
    t.push("half.var-x", "spin-1/2 up: var S_x", 0.25, up.axes[0].variance);
    t.push("half.var-y", "spin-1/2 up: var S_y", 0.25, up.axes[1].variance);
    t.push("half.choice-a-sq", "spin-1/2 up: |choice A|^2", 0.25, up.magnitude_a_sq);
    t.push_vector("half.choice-b", "spin-1/2 up: choice B vector", [0.5; 3], up.choice_b);
    t.push(
        "half.choice-b-sq",
        "spin-1/2 up: |choice B|^2 = s(s+1)",
        0.75,
        up.magnitude_b_sq,
    );

    // Spin 1 as a single particle.
    let one = SpinQuantumNumber::from_twice(2);
    let spin1 = single_spin_report(one, 0)?;
    t.push("spin1.j2", "spin-1, m = 0: <J^2> = j(j+1)", 2.0, spin1.magnitude_b_sq);
    t.push(
        "spin1.length",
        "spin-1: length of J",
        2f64.sqrt(),
        spin1.magnitude_b_sq.sqrt(),
    );

    // Two spins aligned, |1,1>.
    let pair = SpinSystem::new(2)?;
    let aligned = stretched_state(pair);
    let report = vector_sum_report(&aligned)?;
    t.push(
        "aligned.j2",
        "|1,1>: <J^2>",
        2.0,
        total_j_squared(pair, aligned.vector())?,
    );
    t.push(
        "aligned.pair-x",
        "|1,1>: <S_x1 S_x2>",
        0.0,
        pair_correlation(&aligned, Axis::X, 1, 2)?,
    );
    let bx = noise_budget(&aligned, Axis::X)?;
    t.push(
        "aligned.quadrature",
        "|1,1>: var S_x1 + var S_x2",
        0.5,
        bx.uncorrelated_part,
    );
    t.push("aligned.var-jx", "|1,1>: var J_x", 0.5, bx.total);
    t.push_vector(
        "aligned.composed",
        "|1,1>: summed vector",
        [r2, r2, 1.0],
        report.composed,
    );
    t.push(
        "aligned.composed-sq",
        "|1,1>: |summed vector|^2",
        2.0,
        report.composed_magnitude_sq,
    );
    t.push(
        "aligned.naive-sq",
        "|1,1>: |naive componentwise sum|^2",
        3.0,
        report.naive_magnitude_sq,
    );

    // Triplet m = 0.
    let triplet = two_spin_state(2, 0)?;
    let report = vector_sum_report(&triplet)?;
    t.push("triplet0.jz", "|1,0>: <J_z>", 0.0, report.choice_a[2]);
    t.push(
        "triplet0.pair-x",
        "|1,0>: <S_x1 S_x2>",
        0.25,
        pair_correlation(&triplet, Axis::X, 1, 2)?,
    );
    t.push(
        "triplet0.var-jx",
        "|1,0>: var J_x",
        1.0,
        noise_budget(&triplet, Axis::X)?.total,
    );
    t.push(
        "triplet0.var-jy",
        "|1,0>: var J_y",
        1.0,
        noise_budget(&triplet, Axis::Y)?.total,
    );
    t.push_vector(
        "triplet0.composed",
        "|1,0>: summed vector",
        [1.0, 1.0, 0.0],
        report.composed,
    );
    t.push(
        "triplet0.composed-sq",
        "|1,0>: |summed vector|^2",
        2.0,
        report.composed_magnitude_sq,
    );

    // Singlet.
    let singlet = two_spin_state(0, 0)?;
    let report = vector_sum_report(&singlet)?;
    t.push(
        "singlet.pair-x",
        "|0,0>: <S_x1 S_x2>",
        -0.25,
        pair_correlation(&singlet, Axis::X, 1, 2)?,
    );
    t.push(
        "singlet.var-jx",
        "|0,0>: var J_x",
        0.0,
        noise_budget(&singlet, Axis::X)?.total,
    );
    t.push(
        "singlet.var-jy",
        "|0,0>: var J_y",
        0.0,
        noise_budget(&singlet, Axis::Y)?.total,
    );
    t.push(
        "singlet.var-sx1",
        "|0,0>: var S_x1",
        0.25,
        report.budget(Axis::X).site_variances[0],
    );
    t.push_vector("singlet.composed", "|0,0>: summed vector", [0.0; 3], report.composed);
    t.push(
        "singlet.composed-sq",
        "|0,0>: |summed vector|^2",
        0.0,
        report.composed_magnitude_sq,
    );

    // Stretched states of N = 2j spins.
    for n in 1..=10 {
        let system = SpinSystem::new(n)?;
        let s = stretched_state(system);
        let j = n as f64 / 2.0;
        let id = format!("stretched{n}");
        let corr = correlation_matrix(system, s.vector(), Axis::X)?;
        let max_pair = (0..n)
            .flat_map(|i| (i + 1..n).map(move |k| (i, k)))
            .map(|(i, k)| corr.matrix[i][k].abs())
            .fold(0.0, f64::max);
        t.push(
            &format!("{id}.max-pair-x"),
            format!("N = {n}: max |<S_xi S_xk>|"),
            0.0,
            max_pair,
        );
        let var_x = component_moments(&system, s.vector(), Axis::X)?.variance;
        t.push(
            &format!("{id}.var-jx"),
            format!("N = {n}: var J_x = j/2"),
            j / 2.0,
            var_x,
        );
        let report = vector_sum_report(&s)?;
        let root = (j / 2.0).sqrt();
        t.push_vector(
            &format!("{id}.composed"),
            &format!("N = {n}: summed vector"),
            [root, root, j],
            report.composed,
        );
        t.push(
            &format!("{id}.composed-sq"),
            format!("N = {n}: |summed vector|^2 = j(j+1)"),
            j * (j + 1.0),
            magnitude_sq(&report.composed),
        );
    }

    // Every |j, m> along the canonical path.
    for n in 1..=8 {
        t.push(
            &format!("canonical{n}.max-deviation"),
            format!("N = {n}: largest quantum-number or budget mismatch over all |j, m>"),
            0.0,
            canonical_deviation(n)?,
        );
    }

    // Operator algebra.
    for tj in 1..=8 {
        t.push(
            &format!("algebra.spin{tj}"),
            format!("2j = {tj}: [S_x, S_y] - i S_z and S^2 - j(j+1)"),
            0.0,
            single_algebra_deviation(SpinQuantumNumber::from_twice(tj))?,
        );
    }
    for n in 1..=6 {
        t.push(
            &format!("algebra.n{n}"),
            format!("N = {n}: [J_x, J_y] - i J_z and [J^2, J_z]"),
            0.0,
            composite_algebra_deviation(SpinSystem::new(n)?)?,
        );
    }

    // Effective unit of angular momentum.
    t.push(
        "unit.half",
        "sqrt(1 + 1/j) at j = 1/2",
        3f64.sqrt(),
        effective_unit(half)?,
    );
    t.push("unit.one", "sqrt(1 + 1/j) at j = 1", 2f64.sqrt(), effective_unit(one)?);
    let units = (1..=50)
        .map(|tj| effective_unit(SpinQuantumNumber::from_twice(tj)))
        .collect::<Result<Vec<f64>>>()?;
    let rises = units.windows(2).filter(|w| w[1] >= w[0]).count();
    t.push(
        "unit.decreasing",
        "sqrt(1 + 1/j), j = 1/2..25: non-decreasing steps",
        0.0,
        rises as f64,
    );
    let above_one = units.iter().filter(|u| **u <= 1.0).count();
    t.push(
        "unit.above-one",
        "sqrt(1 + 1/j), j = 1/2..25: values not above 1",
        0.0,
        above_one as f64,
    );

    let all_pass = t.items.iter().all(|i| i.pass);
    Ok(PaperTable {
        tolerance,
        items: t.items,
        all_pass,
    })
}

/// Largest deviation of any checked identity over the canonical `|j, m>` of N sites.
pub fn canonical_deviation(n: usize) -> Result<f64> {
    let system = SpinSystem::new(n)?;
    let mut worst = 0.0f64;
    for tj in (n as u32 % 2..=n as u32).step_by(2) {
        for k in 0..=tj {
            let s = coupled_state(system, tj, tj as i32 - 2 * k as i32, None)?;
            let casimir = s.j() * (s.j() + 1.0);
            let [mx, my, mz] = Axis::ALL.map(|a| component_moments(&system, s.vector(), a));
            let (mx, my, mz) = (mx?, my?, mz?);
            worst = worst
                .max((total_j_squared(system, s.vector())? - casimir).abs())
                .max((mz.mean - s.m()).abs())
                .max(mx.mean.abs())
                .max(my.mean.abs())
                .max((mx.second_moment + my.second_moment + mz.second_moment - casimir).abs());
            for (axis, m) in [(Axis::X, mx), (Axis::Y, my), (Axis::Z, mz)] {
                let b = noise_budget(&s, axis)?;
                worst = worst
                    .max((b.total - m.variance).abs())
                    .max((b.uncorrelated_part + b.correlation_part - m.variance).abs());
            }
        }
    }
    Ok(worst)
}

fn single_algebra_deviation(j: SpinQuantumNumber) -> Result<f64> {
    let [sx, sy, sz] = Axis::ALL.map(|a| build_component(j, a));
    let mut worst = 0.0f64;
    for (a, b, c) in [(&sx, &sy, &sz), (&sy, &sz, &sx), (&sz, &sx, &sy)] {
        worst = worst.max(a.commutator(b)?.max_abs_diff(&c.scale(I)));
    }
    let s2 = &(&(&sx * &sx) + &(&sy * &sy)) + &(&sz * &sz);
    let casimir = ComplexMatrix::identity(j.dim())?.scale(Complex64::new(j.casimir(), 0.0));
    Ok(worst.max(s2.max_abs_diff(&casimir)))
}

fn composite_algebra_deviation(system: SpinSystem) -> Result<f64> {
    let [jx, jy, jz] = Axis::ALL.map(|a| total_component(a, system).dense());
    let (jx, jy, jz) = (jx?, jy?, jz?);
    let mut worst = 0.0f64;
    for (a, b, c) in [(&jx, &jy, &jz), (&jy, &jz, &jx), (&jz, &jx, &jy)] {
        worst = worst.max(a.commutator(b)?.max_abs_diff(&c.scale(I)));
    }
    let zero = ComplexMatrix::zeros(system.dim(), system.dim())?;
    Ok(worst.max(dense_j_squared(system)?.commutator(&jz)?.max_abs_diff(&zero)))
}
