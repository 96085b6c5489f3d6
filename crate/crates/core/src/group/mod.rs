//! Words, normal forms and the word problem for BS(n,m).

mod normal_form;
mod presentation;
mod word;

pub use normal_form::{
    abelianization_image, b_length, cyclically_reduce, invert, is_identity, multiply, normalize,
    AbelianImage, Crossing, NormalForm, Orient,
};
pub use presentation::BsPresentation;
pub use word::{parse_word, GroupWord, Letter, Syllable};

pub(crate) use word::parse_terms;
