use std::sync::Arc;

use crate::computad::{compose_path, whiskered_step, DiagramLabel, Path, Sequentialization};
use crate::exactlinalg::Coef;
use crate::hochschild::{cup, cup_sv, cup_vs, pullback_v, pushforward_v, Cochain, HochschildError, Operand, Values};

use super::DefcomplexError;

/// All coordinates of an operand, as owned values.
pub fn to_values<O: Operand + ?Sized>(o: &O) -> Values<O::V> {
    let space = o.space().clone();
    let data = (0..space.dim()).map(|c| o.coord(c)).collect();
    Values { space, data }
}

/// `R_* L^* φ` for the composites `L` of `left` and `R` of `right`; empty
/// paths act as identities.
pub fn whisker_v<O: Operand + ?Sized>(
    label: &DiagramLabel,
    left: &Path,
    right: &Path,
    phi: &O,
) -> Result<Values<O::V>, HochschildError> {
    let mut cur = if left.is_empty() {
        to_values(phi)
    } else {
        Values::new(pullback_v(&compose_path(label, left), phi)?)
    };
    if !right.is_empty() {
        cur = Values::new(pushforward_v(&compose_path(label, right), &cur)?);
    }
    Ok(cur)
}

/// `pre ∪ w ∪ post`, skipping absent factors.
pub fn sandwich<V: Coef>(
    pre: Option<&Cochain>,
    w: Values<V>,
    post: Option<&Cochain>,
) -> Result<Values<V>, HochschildError> {
    let w = match post {
        Some(p) => Values::new(cup_vs(&w, p)?),
        None => w,
    };
    Ok(match pre {
        Some(p) => Values::new(cup_sv(p, &w)?),
        None => w,
    })
}

/// A path with one distinguished edge position.
#[derive(Clone, Debug)]
pub struct PathContext<'a> {
    pub label: &'a DiagramLabel,
    pub path: Path,
    pub at: usize,
}

impl<'a> PathContext<'a> {
    pub fn new(label: &'a DiagramLabel, path: Path, at: usize) -> Result<PathContext<'a>, DefcomplexError> {
        if at >= path.len() {
            return Err(DefcomplexError::Context(format!(
                "position {at} is outside the path {}",
                path.describe(&label.computad)
            )));
        }
        Ok(PathContext { label, path, at })
    }
}

/// Carries a cochain on the distinguished edge (or on a pair parallel to it)
/// to the composite of the whole path.
pub fn whisker_cochain_1<O: Operand + ?Sized>(ctx: &PathContext<'_>, phi: &O) -> Result<Values<O::V>, DefcomplexError> {
    let k = &ctx.label.computad;
    let (l, r) = (ctx.path.slice(k, 0, ctx.at), ctx.path.slice(k, ctx.at + 1, ctx.path.len()));
    Ok(whisker_v(ctx.label, &l, &r, phi)?)
}

/// A sequentialized scheme with its whiskered steps as 0-cochains and the
/// partial vertical composites before and after each step.
#[derive(Clone, Debug)]
pub struct SchemeFrame {
    pub seq: Sequentialization,
    pub steps: Vec<Cochain>,
    /// `pre[i] = v_0 ∪ … ∪ v_{i-1}`; absent for `i = 0`.
    pub pre: Vec<Option<Cochain>>,
    /// `post[i] = v_{i+1} ∪ … ∪ v_{m-1}`; absent for the last step.
    pub post: Vec<Option<Cochain>>,
}

impl SchemeFrame {
    pub fn new(label: &DiagramLabel, seq: Sequentialization) -> Result<SchemeFrame, DefcomplexError> {
        let steps: Vec<Cochain> = seq
            .steps
            .iter()
            .map(|s| Ok(Cochain::from_nat(&whiskered_step(label, s)?)))
            .collect::<Result<_, DefcomplexError>>()?;
        let m = steps.len();
        let mut pre = vec![None; m];
        for i in 1..m {
            pre[i] = Some(match &pre[i - 1] {
                None => steps[0].clone(),
                Some(p) => cup(p, &steps[i - 1])?,
            });
        }
        let mut post = vec![None; m];
        for i in (0..m.saturating_sub(1)).rev() {
            post[i] = Some(match &post[i + 1] {
                None => steps[m - 1].clone(),
                Some(p) => cup(&steps[i + 1], p)?,
            });
        }
        Ok(SchemeFrame { seq, steps, pre, post })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Index of the step firing the given 2-cell.
    pub fn step_of(&self, cell: usize) -> Option<usize> {
        self.seq.steps.iter().position(|s| s.cell == cell)
    }
}

/// A sequentialized scheme with one distinguished face.
pub struct SchemeContext<'a> {
    pub label: &'a DiagramLabel,
    pub frame: Arc<SchemeFrame>,
    pub cell: usize,
}

impl<'a> SchemeContext<'a> {
    pub fn new(label: &'a DiagramLabel, frame: Arc<SchemeFrame>, cell: usize) -> Result<SchemeContext<'a>, DefcomplexError> {
        let hits = frame.seq.steps.iter().filter(|s| s.cell == cell).count();
        if hits != 1 {
            return Err(DefcomplexError::Context(format!(
                "2-cell {} occurs {hits} times in the scheme",
                label.computad.cells2[cell].id
            )));
        }
        Ok(SchemeContext { label, frame, cell })
    }
}

/// Carries a cochain on the distinguished face to the composite of the
/// scheme: `v_{<i} ∪ R_* L^* φ ∪ v_{>i}` along the frame's sequentialization.
pub fn whisker_cochain_2<O: Operand + ?Sized>(ctx: &SchemeContext<'_>, phi: &O) -> Result<Values<O::V>, DefcomplexError> {
    let i = ctx.frame.step_of(ctx.cell).expect("checked on construction");
    let step = &ctx.frame.seq.steps[i];
    let w = whisker_v(ctx.label, &step.prefix, &step.suffix, phi)?;
    Ok(sandwich(ctx.frame.pre[i].as_ref(), w, ctx.frame.post[i].as_ref())?)
}
