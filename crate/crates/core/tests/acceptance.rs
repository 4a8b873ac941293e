//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use course_difficulty::cli;
use course_difficulty::data_io::{
    fixtures, parse_catalog, parse_curriculum, parse_grades, write_catalog, write_curriculum,
    write_grades, DataBundle, Format, GradeBook, Input,
};
use course_difficulty::difficulty::{
    bloom_difficulty, class_average_to_di, course_raw_total, grade_difficulty, Course,
    GenerationRecord, GradeHistory, GradeKind, RubricMode,
};
use course_difficulty::report::{self, OutputFormat, Render, ValidateOptions};
use course_difficulty::rounding::round1;
use course_difficulty::taxonomy::{
    catalog_total, criterion_rubric, AbetCriterion, CriterionCatalog, CriterionId,
};
use course_difficulty::validation::{compare, summarize, Precision};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> Input {
    fixtures::input(name).unwrap_or_else(|| panic!("missing fixture {name}"))
}

fn abet_catalog() -> CriterionCatalog {
    parse_catalog(&fixture("abet_catalog")).unwrap()
}

fn courses(catalog: &CriterionCatalog) -> Vec<Course> {
    parse_curriculum(&fixture("reference_courses_asprinted"), catalog).unwrap()
}

fn bundle() -> DataBundle {
    DataBundle::load(
        &fixture("abet_catalog"),
        &fixture("reference_courses_asprinted"),
        Some(&fixture("reference_grades")),
    )
    .unwrap()
}

fn tenths(values: &[f64]) -> Vec<i64> {
    values
        .iter()
        .map(|v| (round1(*v) * 10.0).round() as i64)
        .collect()
}

fn ac1() -> Check {
    let start = Instant::now();
    let catalog = CriterionCatalog::canonical();
    let rubrics = catalog
        .iter()
        .map(criterion_rubric)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let total = catalog_total(&catalog).map_err(|e| e.to_string())?;
    let from_file = catalog_total(&abet_catalog()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        rubrics == [6, 21, 21, 6, 21, 3, 3, 6, 21, 1, 6, 21, 21],
        || format!("rubrics {rubrics:?}"),
    )?;
    ensure(total == 157 && from_file == 157, || {
        format!("total {total}, fixture total {from_file}")
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("rubrics {rubrics:?}, total {total}, {elapsed:?}"))
}

fn ac2() -> Check {
    let catalog = CriterionCatalog::canonical();
    let example =
        parse_curriculum(&fixture("worked_example"), &catalog).map_err(|e| e.to_string())?;
    let raw = course_raw_total(&example[0], &catalog).map_err(|e| e.to_string())?;
    ensure(raw == 39, || format!("raw total {raw}"))?;
    Ok(format!("{{a,h,k,l}} raw total {raw}"))
}

fn ac3() -> Check {
    let catalog = abet_catalog();
    let mut raws = Vec::new();
    let mut dis = Vec::new();
    for course in courses(&catalog) {
        let d = bloom_difficulty(&RubricMode::AsPrinted.apply(&course), &catalog)
            .map_err(|e| e.to_string())?;
        raws.push(d.raw_total);
        dis.push(d.di);
    }
    ensure(
        raws == [96, 96, 111, 111, 96, 96, 96, 75, 38, 95, 18],
        || format!("raw totals {raws:?}"),
    )?;
    let got = tenths(&dis);
    ensure(got == [38, 38, 44, 44, 38, 38, 38, 36, 23, 38, 11], || {
        format!("DI tenths {got:?}")
    })?;
    Ok(format!("raw totals {raws:?}, DI tenths {got:?}"))
}

fn ac4() -> Check {
    let got = [35.0, 0.0, 100.0].map(|a| class_average_to_di(a).unwrap());
    ensure(got == [3.25, 5.0, 0.0], || format!("{got:?}"))?;
    Ok(format!(
        "35 -> {}, 0 -> {}, 100 -> {}",
        got[0], got[1], got[2]
    ))
}

fn ac5() -> Check {
    let options = ValidateOptions {
        mode: RubricMode::AsPrinted,
        ..ValidateOptions::default()
    };
    let out = report::validate(&bundle(), options).map_err(|e| e.to_string())?;
    let actual: Vec<f64> = out.report.comparisons.iter().map(|c| c.actual_di).collect();
    let errors: Vec<f64> = out.report.comparisons.iter().map(|c| c.abs_error).collect();
    ensure(
        tenths(&actual) == [40, 40, 41, 42, 40, 41, 36, 36, 24, 41, 14],
        || format!("actual {actual:?}"),
    )?;
    ensure(tenths(&errors) == [2, 2, 3, 2, 2, 3, 2, 0, 1, 3, 3], || {
        format!("errors {errors:?}")
    })?;
    let avg = [
        out.reported.mean_actual,
        out.reported.mean_estimated,
        out.reported.mean_abs_error,
    ];
    ensure(tenths(&avg) == [36, 35, 2], || {
        format!("average row {avg:?}")
    })?;
    Ok(format!("average row {} {} {}", avg[0], avg[1], avg[2]))
}

fn ac6() -> Check {
    let options = ValidateOptions {
        mode: RubricMode::AsPrinted,
        tolerance: 0.3,
        ..ValidateOptions::default()
    };
    let out = report::validate(&bundle(), options).map_err(|e| e.to_string())?;
    ensure(out.report.accuracy == 1.0, || {
        format!("accuracy {} at 0.3", out.report.accuracy)
    })?;

    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        prop::collection::vec((0.0f64..=5.0, 0.0f64..=5.0), 1..30),
        0.01f64..5.0,
        0.01f64..5.0,
    );
    runner
        .run(&strategy, |(pairs, t1, t2)| {
            let comparisons: Vec<_> = pairs
                .iter()
                .enumerate()
                .map(|(i, (a, e))| compare(format!("C{i}"), *a, *e, Precision::Rounded))
                .collect();
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let a_lo = summarize(comparisons.clone(), lo).unwrap().accuracy;
            let a_hi = summarize(comparisons, hi).unwrap().accuracy;
            prop_assert!(a_lo <= a_hi);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("accuracy 1.0 at tolerance 0.3; monotone over 256 random reports".into())
}

fn criterion(
    levels: impl IntoIterator<Item = course_difficulty::taxonomy::BloomLevel>,
) -> AbetCriterion {
    AbetCriterion::new(CriterionId::new("x").unwrap(), "", levels).unwrap()
}

fn fail<T: std::fmt::Debug>(
    name: &str,
) -> impl Fn(proptest::test_runner::TestError<T>) -> String + '_ {
    move |e| format!("{name}: {e}")
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let code = cli::run(
        std::iter::once("course-difficulty").chain(args.iter().copied()),
        &mut out,
        &mut Vec::new(),
    );
    assert_eq!(code, 0);
    out
}

fn ac7() -> Check {
    const CASES: u32 = 128;
    let start = Instant::now();
    let runner = || {
        TestRunner::new(Config {
            cases: CASES,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let mut passed = Vec::new();

    runner()
        .run(
            &(common::level_set(), common::level_set()),
            |(small, extra)| {
                let small: BTreeSet<_> = small.into_iter().collect();
                let large: BTreeSet<_> =
                    small.union(&extra.into_iter().collect()).copied().collect();
                prop_assert!(
                    criterion_rubric(&criterion(small)).unwrap()
                        <= criterion_rubric(&criterion(large)).unwrap()
                );
                Ok(())
            },
        )
        .map_err(fail("rubric monotonicity"))?;
    passed.push("rubric monotonicity");

    runner()
        .run(&common::catalog_with_courses(), |(catalog, courses)| {
            for course in &courses {
                let d = bloom_difficulty(course, &catalog).unwrap();
                prop_assert!(d.di >= 5.0 / 21.0 - 1e-12 && d.di <= 5.0 + 1e-12);
                prop_assert!(
                    (d.di * f64::from(d.max_total) - 5.0 * f64::from(d.raw_total)).abs() < 1e-9
                );
            }
            Ok(())
        })
        .map_err(fail("DI bounds / normalization"))?;
    passed.push("DI bounds");
    passed.push("normalization identity");

    runner()
        .run(&(0.0f64..=100.0), |a| {
            let di = class_average_to_di(a).unwrap();
            prop_assert!((di - (5.0 - a * 5.0 / 100.0)).abs() < 1e-12);
            Ok(())
        })
        .map_err(fail("grade DI linearity"))?;
    passed.push("grade DI linearity");

    runner()
        .run(
            &prop::collection::vec(0.0f64..=5.0, 1..8)
                .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle())),
            |(values, shuffled)| {
                let history = |vals: &[f64]| {
                    let gens = vals
                        .iter()
                        .enumerate()
                        .map(|(i, v)| {
                            GenerationRecord::new(format!("g{i}"), GradeKind::Di, *v).unwrap()
                        })
                        .collect();
                    GradeHistory::new("P", gens).unwrap()
                };
                let a = grade_difficulty(&history(&values)).unwrap();
                let b = grade_difficulty(&history(&shuffled)).unwrap();
                prop_assert!((a - b).abs() < 1e-12);
                Ok(())
            },
        )
        .map_err(fail("permutation invariance"))?;
    passed.push("permutation invariance");

    runner()
        .run(
            &(common::catalog_with_courses(), common::grade_book()),
            |((catalog, courses), book)| {
                for format in [Format::Csv, Format::Json] {
                    let c =
                        parse_catalog(&Input::new("rt", write_catalog(&catalog, format), format))
                            .unwrap();
                    prop_assert!(c.iter().eq(catalog.iter()));
                    let cur = parse_curriculum(
                        &Input::new("rt", write_curriculum(&courses, format), format),
                        &catalog,
                    )
                    .unwrap();
                    prop_assert_eq!(&cur, &courses);
                    let g: GradeBook =
                        parse_grades(&Input::new("rt", write_grades(&book, format), format))
                            .unwrap();
                    prop_assert_eq!(&g, &book);
                }
                Ok(())
            },
        )
        .map_err(fail("round-trip"))?;
    passed.push("round-trip (catalog, curriculum, grades; CSV and JSON)");

    runner()
        .run(&common::catalog_with_courses(), |(catalog, courses)| {
            let text_catalog = write_catalog(&catalog, Format::Csv);
            let text_courses = write_curriculum(&courses, Format::Csv);
            let pipeline = || {
                let cat =
                    parse_catalog(&Input::new("c", text_catalog.clone(), Format::Csv)).unwrap();
                let cur =
                    parse_curriculum(&Input::new("k", text_courses.clone(), Format::Csv), &cat)
                        .unwrap();
                let report = report::estimate(&cat, &cur, RubricMode::AsPrinted).unwrap();
                [OutputFormat::Csv, OutputFormat::Json, OutputFormat::Table]
                    .map(|f| report.render(f))
            };
            prop_assert_eq!(pipeline(), pipeline());
            Ok(())
        })
        .map_err(fail("pipeline determinism"))?;
    let args = [
        "validate",
        "--curriculum",
        "reference_courses_asprinted",
        "--grades",
        "reference_grades",
        "--format",
        "json",
    ];
    ensure(run_cli(&args) == run_cli(&args), || {
        "CLI output differs between runs".into()
    })?;
    passed.push("pipeline byte determinism");

    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} properties x {CASES} cases in {elapsed:.2?}: {}",
        passed.len(),
        passed.join(", ")
    ))
}

fn ac8() -> Check {
    let catalog = abet_catalog();
    let mut differing = Vec::new();
    for course in courses(&catalog) {
        let canonical = bloom_difficulty(&RubricMode::Canonical.apply(&course), &catalog).unwrap();
        let printed = bloom_difficulty(&RubricMode::AsPrinted.apply(&course), &catalog).unwrap();
        if canonical != printed {
            println!(
                "    {:<4} canonical raw {:>3} DI {:.1}   as-printed raw {:>3} DI {:.1}",
                course.code,
                canonical.raw_total,
                canonical.reported_di(),
                printed.raw_total,
                printed.reported_di()
            );
            differing.push(course.code.clone());
        }
    }
    ensure(differing == ["C8", "C9", "C10", "C11"], || {
        format!("differing courses {differing:?}")
    })?;
    Ok(format!("modes differ on {}", differing.join(", ")))
}

fn main() {
    let checks: [Criterion; 8] = [
        ("AC1", "criterion rubrics and catalog total", ac1),
        ("AC2", "worked example raw total", ac2),
        ("AC3", "as-printed course difficulty table", ac3),
        ("AC4", "class average to difficulty", ac4),
        ("AC5", "grade comparison table", ac5),
        ("AC6", "accuracy at tolerance 0.3 and monotonicity", ac6),
        ("AC7", "property suites", ac7),
        ("AC8", "canonical vs as-printed discrepancy", ac8),
    ];
    let mut failed = 0;
    for (id, name, check) in checks {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
