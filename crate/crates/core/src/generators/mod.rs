//! Example families: tree space, skeletons of complete fans, tropical
//! hypersurfaces and initial forms.

mod hypersurface;
mod trees;

pub use hypersurface::{in_tropical_hypersurface, initial_form, tropical_hypersurface_fan};
pub use trees::{all_splits, is_tree, splits_compatible, tree_space_fan, tree_space_link, Split, SplitSetJson};

use crate::complex::FacePoset;
use crate::error::{Error, Result};
use crate::fan::{is_complete, Fan};

/// The link of the codimension-`c` skeleton of a complete fan: the link of
/// a general complete intersection of codimension `c` in its toric variety.
pub fn ci_skeleton_link(complete_fan: &Fan, c: usize) -> Result<FacePoset> {
    let r = complete_fan.ambient_rank();
    if c < 1 || c > r {
        return Err(Error::CodimOutOfRange { codim: c, max: r });
    }
    if !is_complete(complete_fan) {
        return Err(Error::NotComplete);
    }
    complete_fan.skeleton(c)?.link_poset()
}
