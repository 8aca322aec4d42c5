//! The commands behind the `semisim` binary. Each returns a [`Report`];
//! the binary only parses arguments, renders and picks the exit code.

use std::fs;
use std::path::Path;

use crate::census::run_census;
use crate::classify::{classify, cs_equals_sym_structural};
use crate::error::{Error, Result};
use crate::generators::{
    discrete_space, pseudolinear, rectangle_example, strongly_rigid_space, DEFAULT_PATTERN_CAP,
};
use crate::perm::PermGroup;
use crate::report::{ErrorKind, Report};
use crate::similarity::{
    are_combinatorially_similar, self_isometry_group, self_similarity_group, SearchConfig,
    SearchMode,
};
use crate::space::{parse_space, DistanceValue, SemimetricSpace};

/// Environment variable consulted for the brute-force cap when `--cap` is absent.
pub const CAP_ENV: &str = "SEMISIM_CAP";

/// Groups larger than this are reported without their element list.
pub const DEFAULT_LIST_LIMIT: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cs,
    Iso,
}

impl GroupKind {
    fn name(self) -> &'static str {
        match self {
            GroupKind::Cs => "cs",
            GroupKind::Iso => "iso",
        }
    }
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::Pruned => "pruned",
    }
}

fn load(path: &Path) -> std::result::Result<SemimetricSpace, (ErrorKind, String)> {
    let text = fs::read_to_string(path).map_err(|e| {
        (
            ErrorKind::Input,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    parse_space(&text).map_err(|e| (ErrorKind::of(&e), e.to_string()))
}

macro_rules! load_or_fail {
    ($report:ident, $path:expr) => {
        match load($path) {
            Ok(space) => space,
            Err((kind, message)) => {
                $report.fail(kind, message);
                return $report;
            }
        }
    };
}

pub fn cmd_validate(path: &Path, metric: bool) -> Report {
    let mut report = Report::new("validate")
        .input("path", path.display())
        .input("metric", metric);
    let space = load_or_fail!(report, path);
    report.push("n", space.len());
    report.push("values", space.value_set().len());
    if metric {
        if let Err(e) = space.check_metric() {
            report.fail_with(&Error::Validation(e));
        }
    }
    report
}

pub fn cmd_classify(path: &Path, config: &SearchConfig) -> Report {
    let mut report = Report::new("classify")
        .input("path", path.display())
        .input("cap", config.cap)
        .input("mode", mode_name(config.mode));
    let space = load_or_fail!(report, path);
    let class = classify(&space);
    report.push("n", space.len());
    report.push("discrete", class.discrete);
    report.push("strongly_rigid", class.strongly_rigid);
    report.push("weakly_rigid", class.weakly_rigid);
    report.push("rectangle_type", class.rectangle_type);
    report.push("cs_equals_sym", class.cs_equals_sym);
    if space.len() > config.cap {
        report.push(
            "notice",
            format!(
                "brute-force cross-check skipped: n = {} exceeds cap {}",
                space.len(),
                config.cap
            ),
        );
        return report;
    }
    match self_similarity_group(&space, config) {
        Ok(group) => {
            let brute = group.is_symmetric_group();
            let agree = brute == cs_equals_sym_structural(&space);
            report.push("cs_order", group.order());
            report.push("brute_force", brute);
            report.push("agree", agree);
            if !agree {
                report.fail(
                    ErrorKind::Invariant,
                    "structural classification disagrees with the brute-force group",
                );
            }
        }
        Err(e) => report.fail_with(&e),
    }
    report
}

fn push_group(report: &mut Report, group: &PermGroup, list_limit: usize) {
    report.push("order", group.order());
    report.push("full", group.is_symmetric_group());
    if group.order() <= list_limit {
        report.push(
            "element",
            group
                .elements()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
        );
    } else {
        report.push(
            "elements",
            format!("suppressed (order {} > limit {list_limit})", group.order()),
        );
    }
}

pub fn cmd_group(
    path: &Path,
    which: GroupKind,
    config: &SearchConfig,
    list_limit: usize,
) -> Report {
    let mut report = Report::new("group")
        .input("path", path.display())
        .input("which", which.name())
        .input("cap", config.cap)
        .input("mode", mode_name(config.mode));
    let space = load_or_fail!(report, path);
    report.push("n", space.len());
    let group = match which {
        GroupKind::Cs => self_similarity_group(&space, config),
        GroupKind::Iso => self_isometry_group(&space, config),
    };
    match group {
        Ok(g) => push_group(&mut report, &g, list_limit),
        Err(e) => report.fail_with(&e),
    }
    report
}

pub fn cmd_similar(path_a: &Path, path_b: &Path) -> Report {
    let mut report = Report::new("similar")
        .input("a", path_a.display())
        .input("b", path_b.display());
    let a = load_or_fail!(report, path_a);
    let b = load_or_fail!(report, path_b);
    match are_combinatorially_similar(&a, &b) {
        Some(w) => {
            report.push("similar", "yes");
            report.push("psi", w.psi.to_string());
            report.push(
                "f",
                w.f.pairs()
                    .iter()
                    .map(|(t, s)| format!("{t} -> {s}"))
                    .collect::<Vec<_>>(),
            );
        }
        None => report.push("similar", "no"),
    }
    report
}

pub fn cmd_enumerate(n: usize, config: &SearchConfig) -> Report {
    let mut report = Report::new("enumerate")
        .input("n", n)
        .input("mode", mode_name(config.mode));
    if n < 3 {
        report.fail(
            ErrorKind::Usage,
            format!("enumerate needs 3 <= n <= {DEFAULT_PATTERN_CAP}, got {n}"),
        );
        return report;
    }
    let census = match run_census(n, config) {
        Ok(c) => c,
        Err(e) => {
            report.fail_with(&e);
            return report;
        }
    };
    report.push("total", census.total);
    report.push("cs_sym", census.full_sym.len());
    report.push("discrete", census.discrete);
    report.push("strongly_rigid", census.strongly_rigid);
    report.push("weakly_rigid", census.weakly_rigid);
    report.push("rectangle_type", census.rectangle_type);
    report.push("structural_cs_sym", census.structural_cs_sym);
    report.push("disagreements", census.disagreements.len());
    report.push(
        "full_sym_pattern",
        census
            .full_sym
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
    );
    if !census.disagreements.is_empty() {
        report.push(
            "disagreement",
            census
                .disagreements
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
        );
        report.fail(
            ErrorKind::Invariant,
            "structural classification disagrees with the brute-force group",
        );
    }
    report
}

fn parse_args(name: &str) -> Option<(&str, Vec<&str>)> {
    let name = name.trim();
    match name.split_once('(') {
        None => Some((name, Vec::new())),
        Some((head, rest)) => {
            let inner = rest.strip_suffix(')')?;
            Some((head.trim(), inner.split(',').map(str::trim).collect()))
        }
    }
}

/// Builds a named example: `rectangle`, `pseudolinear(s,t)`,
/// `discrete(n,k)`, `rigid(n)` or `rigid(n,metric)`.
pub fn example_space(name: &str) -> Result<SemimetricSpace> {
    let usage = || Error::Parse {
        line: 1,
        message: format!("unknown example {name:?}"),
    };
    let value = |s: &str| {
        s.parse::<DistanceValue>().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })
    };
    let count = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad point count {s:?}"),
        })
    };
    let (head, args) = parse_args(name).ok_or_else(usage)?;
    match (head, args.as_slice()) {
        ("rectangle", []) => Ok(rectangle_example()),
        ("pseudolinear", [s, t]) => pseudolinear(&value(s)?, &value(t)?),
        ("discrete", [n, k]) => discrete_space(count(n)?, &value(k)?),
        ("rigid", [n]) => strongly_rigid_space(count(n)?, false),
        ("rigid", [n, "metric"]) => strongly_rigid_space(count(n)?, true),
        _ => Err(usage()),
    }
}

/// Writes the named example's matrix file to `output`.
pub fn cmd_example(name: &str, output: &Path) -> Report {
    let mut report = Report::new("example")
        .input("name", name)
        .input("output", output.display());
    let space = match example_space(name) {
        Ok(s) => s,
        Err(e) => {
            report.fail(ErrorKind::Usage, e.to_string());
            return report;
        }
    };
    if let Err(e) = fs::write(output, space.to_matrix_string()) {
        report.fail(
            ErrorKind::Input,
            format!("cannot write {}: {e}", output.display()),
        );
        return report;
    }
    report.push("n", space.len());
    report.push(
        "values",
        space
            .value_set()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    report
}
