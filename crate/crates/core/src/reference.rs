//! Published per-dataset statistics for the 65 Jureczko releases.
//!
//! Used to flag report cells that differ from the published figures and to
//! exercise the dataset-naming rules without the CSV files present.

/// One release: original size, cleaned size and quality counts as published.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedDataset {
    pub name: &'static str,
    pub cases: usize,
    pub defective: usize,
    /// Published inconsistent-case count.
    pub inconsistent: usize,
    /// Published identical-case count.
    pub identical: usize,
    pub cleaned_cases: usize,
    pub deleted_cases: usize,
    pub cleaned_defective: usize,
    pub deleted_defective: usize,
}

/// One release pair of the same project with its published pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedPair {
    pub older: &'static str,
    pub newer: &'static str,
    pub identical: usize,
    pub inconsistent: usize,
}

#[rustfmt::skip]
pub const DATASETS: [PublishedDataset; 65] = [
    PublishedDataset { name: "ant1.7", cases: 745, defective: 166, inconsistent: 0, identical: 36, cleaned_cases: 724, deleted_cases: 21, cleaned_defective: 166, deleted_defective: 0 },
    PublishedDataset { name: "arc", cases: 234, defective: 27, inconsistent: 2, identical: 28, cleaned_cases: 213, deleted_cases: 21, cleaned_defective: 25, deleted_defective: 2 },
    PublishedDataset { name: "berek", cases: 43, defective: 16, inconsistent: 0, identical: 0, cleaned_cases: 43, deleted_cases: 0, cleaned_defective: 16, deleted_defective: 0 },
    PublishedDataset { name: "camel1.0", cases: 339, defective: 13, inconsistent: 0, identical: 22, cleaned_cases: 327, deleted_cases: 12, cleaned_defective: 13, deleted_defective: 0 },
    PublishedDataset { name: "camel1.2", cases: 608, defective: 216, inconsistent: 38, identical: 58, cleaned_cases: 558, deleted_cases: 50, cleaned_defective: 205, deleted_defective: 11 },
    PublishedDataset { name: "camel1.4", cases: 872, defective: 145, inconsistent: 0, identical: 101, cleaned_cases: 802, deleted_cases: 70, cleaned_defective: 144, deleted_defective: 1 },
    PublishedDataset { name: "camel1.6", cases: 965, defective: 188, inconsistent: 4, identical: 117, cleaned_cases: 878, deleted_cases: 87, cleaned_defective: 181, deleted_defective: 7 },
    PublishedDataset { name: "ckjm", cases: 10, defective: 5, inconsistent: 0, identical: 0, cleaned_cases: 10, deleted_cases: 0, cleaned_defective: 5, deleted_defective: 0 },
    PublishedDataset { name: "elearning", cases: 64, defective: 5, inconsistent: 0, identical: 12, cleaned_cases: 57, deleted_cases: 7, cleaned_defective: 5, deleted_defective: 0 },
    PublishedDataset { name: "forrest0.6", cases: 6, defective: 1, inconsistent: 0, identical: 0, cleaned_cases: 6, deleted_cases: 0, cleaned_defective: 1, deleted_defective: 0 },
    PublishedDataset { name: "forrest0.7", cases: 29, defective: 5, inconsistent: 0, identical: 2, cleaned_cases: 28, deleted_cases: 1, cleaned_defective: 5, deleted_defective: 0 },
    PublishedDataset { name: "forrest0.8", cases: 32, defective: 2, inconsistent: 0, identical: 2, cleaned_cases: 31, deleted_cases: 1, cleaned_defective: 2, deleted_defective: 0 },
    PublishedDataset { name: "intercafe", cases: 27, defective: 4, inconsistent: 0, identical: 0, cleaned_cases: 27, deleted_cases: 0, cleaned_defective: 4, deleted_defective: 0 },
    PublishedDataset { name: "ivy1.1", cases: 111, defective: 63, inconsistent: 1, identical: 4, cleaned_cases: 107, deleted_cases: 4, cleaned_defective: 62, deleted_defective: 1 },
    PublishedDataset { name: "ivy1.4", cases: 241, defective: 16, inconsistent: 0, identical: 10, cleaned_cases: 236, deleted_cases: 5, cleaned_defective: 16, deleted_defective: 0 },
    PublishedDataset { name: "ivy2.0", cases: 352, defective: 40, inconsistent: 0, identical: 14, cleaned_cases: 345, deleted_cases: 7, cleaned_defective: 40, deleted_defective: 0 },
    PublishedDataset { name: "jedit3.2", cases: 272, defective: 90, inconsistent: 0, identical: 8, cleaned_cases: 268, deleted_cases: 4, cleaned_defective: 90, deleted_defective: 0 },
    PublishedDataset { name: "jedit4.0", cases: 306, defective: 75, inconsistent: 1, identical: 6, cleaned_cases: 301, deleted_cases: 5, cleaned_defective: 74, deleted_defective: 1 },
    PublishedDataset { name: "jedit4.1", cases: 312, defective: 79, inconsistent: 0, identical: 8, cleaned_cases: 308, deleted_cases: 4, cleaned_defective: 79, deleted_defective: 0 },
    PublishedDataset { name: "jedit4.2", cases: 367, defective: 48, inconsistent: 0, identical: 8, cleaned_cases: 363, deleted_cases: 4, cleaned_defective: 48, deleted_defective: 0 },
    PublishedDataset { name: "jedit4.3", cases: 492, defective: 11, inconsistent: 32, identical: 24, cleaned_cases: 474, deleted_cases: 18, cleaned_defective: 7, deleted_defective: 4 },
    PublishedDataset { name: "kalkulator", cases: 27, defective: 6, inconsistent: 1, identical: 0, cleaned_cases: 25, deleted_cases: 2, cleaned_defective: 5, deleted_defective: 1 },
    PublishedDataset { name: "log4j1.0", cases: 135, defective: 34, inconsistent: 0, identical: 0, cleaned_cases: 135, deleted_cases: 0, cleaned_defective: 34, deleted_defective: 0 },
    PublishedDataset { name: "log4j1.1", cases: 109, defective: 37, inconsistent: 0, identical: 0, cleaned_cases: 109, deleted_cases: 0, cleaned_defective: 37, deleted_defective: 0 },
    PublishedDataset { name: "log4j1.2", cases: 205, defective: 189, inconsistent: 0, identical: 6, cleaned_cases: 202, deleted_cases: 3, cleaned_defective: 187, deleted_defective: 2 },
    PublishedDataset { name: "lucene2.0", cases: 195, defective: 91, inconsistent: 1, identical: 4, cleaned_cases: 191, deleted_cases: 4, cleaned_defective: 90, deleted_defective: 1 },
    PublishedDataset { name: "lucene2.2", cases: 247, defective: 144, inconsistent: 2, identical: 6, cleaned_cases: 239, deleted_cases: 8, cleaned_defective: 139, deleted_defective: 5 },
    PublishedDataset { name: "lucene2.4", cases: 340, defective: 203, inconsistent: 0, identical: 6, cleaned_cases: 336, deleted_cases: 4, cleaned_defective: 199, deleted_defective: 4 },
    PublishedDataset { name: "nieruchomosci", cases: 27, defective: 10, inconsistent: 0, identical: 2, cleaned_cases: 26, deleted_cases: 1, cleaned_defective: 10, deleted_defective: 0 },
    PublishedDataset { name: "pdftranslator", cases: 33, defective: 15, inconsistent: 0, identical: 0, cleaned_cases: 33, deleted_cases: 0, cleaned_defective: 15, deleted_defective: 0 },
    PublishedDataset { name: "poi1.5", cases: 237, defective: 141, inconsistent: 19, identical: 31, cleaned_cases: 203, deleted_cases: 34, cleaned_defective: 122, deleted_defective: 19 },
    PublishedDataset { name: "poi2.0", cases: 314, defective: 37, inconsistent: 1, identical: 48, cleaned_cases: 282, deleted_cases: 32, cleaned_defective: 35, deleted_defective: 2 },
    PublishedDataset { name: "poi2.5", cases: 385, defective: 248, inconsistent: 2, identical: 50, cleaned_cases: 350, deleted_cases: 35, cleaned_defective: 221, deleted_defective: 27 },
    PublishedDataset { name: "poi3.0", cases: 442, defective: 281, inconsistent: 9, identical: 70, cleaned_cases: 398, deleted_cases: 44, cleaned_defective: 255, deleted_defective: 26 },
    PublishedDataset { name: "prop1", cases: 18471, defective: 2738, inconsistent: 10399, identical: 11860, cleaned_cases: 8011, deleted_cases: 10460, cleaned_defective: 1536, deleted_defective: 1202 },
    PublishedDataset { name: "prop2", cases: 23014, defective: 2431, inconsistent: 3483, identical: 13527, cleaned_cases: 12115, deleted_cases: 10899, cleaned_defective: 1503, deleted_defective: 928 },
    PublishedDataset { name: "prop3", cases: 10274, defective: 1180, inconsistent: 2645, identical: 7734, cleaned_cases: 3189, deleted_cases: 7085, cleaned_defective: 298, deleted_defective: 882 },
    PublishedDataset { name: "prop4", cases: 8718, defective: 840, inconsistent: 2550, identical: 6577, cleaned_cases: 3384, deleted_cases: 5334, cleaned_defective: 419, deleted_defective: 421 },
    PublishedDataset { name: "prop5", cases: 8516, defective: 1299, inconsistent: 1687, identical: 5669, cleaned_cases: 3368, deleted_cases: 5148, cleaned_defective: 561, deleted_defective: 738 },
    PublishedDataset { name: "prop6", cases: 660, defective: 66, inconsistent: 47, identical: 372, cleaned_cases: 377, deleted_cases: 283, cleaned_defective: 32, deleted_defective: 34 },
    PublishedDataset { name: "redaktor", cases: 176, defective: 27, inconsistent: 1, identical: 10, cleaned_cases: 169, deleted_cases: 7, cleaned_defective: 25, deleted_defective: 2 },
    PublishedDataset { name: "serapion", cases: 45, defective: 9, inconsistent: 0, identical: 2, cleaned_cases: 44, deleted_cases: 1, cleaned_defective: 9, deleted_defective: 0 },
    PublishedDataset { name: "skarbonka", cases: 45, defective: 9, inconsistent: 0, identical: 0, cleaned_cases: 45, deleted_cases: 0, cleaned_defective: 9, deleted_defective: 0 },
    PublishedDataset { name: "sklebagd", cases: 20, defective: 12, inconsistent: 0, identical: 0, cleaned_cases: 20, deleted_cases: 0, cleaned_defective: 12, deleted_defective: 0 },
    PublishedDataset { name: "synapse1.0", cases: 157, defective: 16, inconsistent: 0, identical: 6, cleaned_cases: 153, deleted_cases: 4, cleaned_defective: 16, deleted_defective: 0 },
    PublishedDataset { name: "synapse1.1", cases: 222, defective: 60, inconsistent: 1, identical: 12, cleaned_cases: 213, deleted_cases: 9, cleaned_defective: 59, deleted_defective: 1 },
    PublishedDataset { name: "synapse1.2", cases: 256, defective: 86, inconsistent: 0, identical: 18, cleaned_cases: 245, deleted_cases: 11, cleaned_defective: 86, deleted_defective: 0 },
    PublishedDataset { name: "systemdata", cases: 65, defective: 9, inconsistent: 0, identical: 4, cleaned_cases: 63, deleted_cases: 2, cleaned_defective: 9, deleted_defective: 0 },
    PublishedDataset { name: "szybkafucha", cases: 25, defective: 14, inconsistent: 0, identical: 0, cleaned_cases: 25, deleted_cases: 0, cleaned_defective: 14, deleted_defective: 0 },
    PublishedDataset { name: "termoproject", cases: 42, defective: 13, inconsistent: 0, identical: 2, cleaned_cases: 41, deleted_cases: 1, cleaned_defective: 13, deleted_defective: 0 },
    PublishedDataset { name: "tomcat", cases: 858, defective: 77, inconsistent: 0, identical: 98, cleaned_cases: 796, deleted_cases: 62, cleaned_defective: 77, deleted_defective: 0 },
    PublishedDataset { name: "velocity1.4", cases: 196, defective: 147, inconsistent: 0, identical: 28, cleaned_cases: 179, deleted_cases: 17, cleaned_defective: 132, deleted_defective: 15 },
    PublishedDataset { name: "velocity1.5", cases: 214, defective: 142, inconsistent: 0, identical: 27, cleaned_cases: 198, deleted_cases: 16, cleaned_defective: 133, deleted_defective: 9 },
    PublishedDataset { name: "velocity1.6", cases: 229, defective: 78, inconsistent: 0, identical: 31, cleaned_cases: 211, deleted_cases: 18, cleaned_defective: 76, deleted_defective: 2 },
    PublishedDataset { name: "workflow", cases: 39, defective: 20, inconsistent: 0, identical: 2, cleaned_cases: 38, deleted_cases: 1, cleaned_defective: 20, deleted_defective: 0 },
    PublishedDataset { name: "wspomaganiepi", cases: 18, defective: 12, inconsistent: 0, identical: 0, cleaned_cases: 18, deleted_cases: 0, cleaned_defective: 12, deleted_defective: 0 },
    PublishedDataset { name: "xalan2.4", cases: 723, defective: 110, inconsistent: 0, identical: 49, cleaned_cases: 694, deleted_cases: 29, cleaned_defective: 110, deleted_defective: 0 },
    PublishedDataset { name: "xalan2.5", cases: 803, defective: 387, inconsistent: 3, identical: 86, cleaned_cases: 740, deleted_cases: 63, cleaned_defective: 363, deleted_defective: 24 },
    PublishedDataset { name: "xalan2.6", cases: 885, defective: 411, inconsistent: 39, identical: 189, cleaned_cases: 724, deleted_cases: 161, cleaned_defective: 322, deleted_defective: 89 },
    PublishedDataset { name: "xalan2.7", cases: 909, defective: 898, inconsistent: 0, identical: 208, cleaned_cases: 740, deleted_cases: 169, cleaned_defective: 732, deleted_defective: 166 },
    PublishedDataset { name: "xerces1.2", cases: 440, defective: 71, inconsistent: 34, identical: 114, cleaned_cases: 344, deleted_cases: 96, cleaned_defective: 58, deleted_defective: 13 },
    PublishedDataset { name: "xerces1.3", cases: 453, defective: 69, inconsistent: 1, identical: 118, cleaned_cases: 362, deleted_cases: 91, cleaned_defective: 68, deleted_defective: 1 },
    PublishedDataset { name: "xerces1.4", cases: 588, defective: 437, inconsistent: 5, identical: 132, cleaned_cases: 486, deleted_cases: 102, cleaned_defective: 376, deleted_defective: 61 },
    PublishedDataset { name: "xercesinit", cases: 162, defective: 77, inconsistent: 3, identical: 19, cleaned_cases: 146, deleted_cases: 16, cleaned_defective: 65, deleted_defective: 12 },
    PublishedDataset { name: "zuzel", cases: 29, defective: 13, inconsistent: 1, identical: 0, cleaned_cases: 27, deleted_cases: 2, cleaned_defective: 12, deleted_defective: 1 },
];

#[rustfmt::skip]
pub const PAIRS: [PublishedPair; 67] = [
    PublishedPair { older: "camel1.0", newer: "camel1.2", identical: 112, inconsistent: 19 },
    PublishedPair { older: "prop1", newer: "prop2", identical: 17748, inconsistent: 4940 },
    PublishedPair { older: "camel1.0", newer: "camel1.4", identical: 111, inconsistent: 2 },
    PublishedPair { older: "prop1", newer: "prop3", identical: 12010, inconsistent: 3492 },
    PublishedPair { older: "camel1.0", newer: "camel1.6", identical: 92, inconsistent: 3 },
    PublishedPair { older: "prop1", newer: "prop4", identical: 19283, inconsistent: 5377 },
    PublishedPair { older: "camel1.2", newer: "camel1.4", identical: 408, inconsistent: 52 },
    PublishedPair { older: "prop1", newer: "prop5", identical: 10795, inconsistent: 3312 },
    PublishedPair { older: "camel1.2", newer: "camel1.6", identical: 406, inconsistent: 39 },
    PublishedPair { older: "prop1", newer: "prop6", identical: 610, inconsistent: 28 },
    PublishedPair { older: "camel1.4", newer: "camel1.6", identical: 863, inconsistent: 46 },
    PublishedPair { older: "prop2", newer: "prop3", identical: 10591, inconsistent: 2101 },
    PublishedPair { older: "forrest0.6", newer: "forrest0.7", identical: 1, inconsistent: 0 },
    PublishedPair { older: "prop2", newer: "prop4", identical: 14904, inconsistent: 3469 },
    PublishedPair { older: "forrest0.6", newer: "forrest0.8", identical: 1, inconsistent: 0 },
    PublishedPair { older: "prop2", newer: "prop5", identical: 7934, inconsistent: 1848 },
    PublishedPair { older: "forrest0.7", newer: "forrest0.8", identical: 18, inconsistent: 0 },
    PublishedPair { older: "prop2", newer: "prop6", identical: 107, inconsistent: 0 },
    PublishedPair { older: "ivy1.1", newer: "ivy1.4", identical: 9, inconsistent: 1 },
    PublishedPair { older: "prop3", newer: "prop4", identical: 7511, inconsistent: 1512 },
    PublishedPair { older: "ivy1.1", newer: "ivy2.0", identical: 3, inconsistent: 0 },
    PublishedPair { older: "prop3", newer: "prop5", identical: 5327, inconsistent: 176 },
    PublishedPair { older: "ivy1.4", newer: "ivy2.0", identical: 31, inconsistent: 0 },
    PublishedPair { older: "prop3", newer: "prop6", identical: 156, inconsistent: 3 },
    PublishedPair { older: "jedit3.2", newer: "jedit4.0", identical: 71, inconsistent: 4 },
    PublishedPair { older: "prop4", newer: "prop5", identical: 8079, inconsistent: 1432 },
    PublishedPair { older: "jedit3.2", newer: "jedit4.1", identical: 58, inconsistent: 0 },
    PublishedPair { older: "prop4", newer: "prop6", identical: 33, inconsistent: 0 },
    PublishedPair { older: "jedit3.2", newer: "jedit4.2", identical: 31, inconsistent: 0 },
    PublishedPair { older: "prop5", newer: "prop6", identical: 30, inconsistent: 6 },
    PublishedPair { older: "jedit3.2", newer: "jedit4.3", identical: 8, inconsistent: 0 },
    PublishedPair { older: "synapse1.0", newer: "synapse1.1", identical: 24, inconsistent: 6 },
    PublishedPair { older: "jedit4.0", newer: "jedit4.1", identical: 67, inconsistent: 4 },
    PublishedPair { older: "synapse1.0", newer: "synapse1.2", identical: 9, inconsistent: 1 },
    PublishedPair { older: "jedit4.0", newer: "jedit4.2", identical: 36, inconsistent: 0 },
    PublishedPair { older: "synapse1.1", newer: "synapse1.2", identical: 82, inconsistent: 10 },
    PublishedPair { older: "jedit4.0", newer: "jedit4.3", identical: 8, inconsistent: 0 },
    PublishedPair { older: "velocity1.4", newer: "velocity1.5", identical: 7, inconsistent: 17 },
    PublishedPair { older: "jedit4.1", newer: "jedit4.2", identical: 68, inconsistent: 1 },
    PublishedPair { older: "velocity1.4", newer: "velocity1.6", identical: 2, inconsistent: 15 },
    PublishedPair { older: "jedit4.1", newer: "jedit4.3", identical: 20, inconsistent: 0 },
    PublishedPair { older: "velocity1.5", newer: "velocity1.6", identical: 44, inconsistent: 48 },
    PublishedPair { older: "jedit4.2", newer: "jedit4.3", identical: 66, inconsistent: 0 },
    PublishedPair { older: "xalan2.4", newer: "xalan2.5", identical: 211, inconsistent: 147 },
    PublishedPair { older: "log4j1.0", newer: "log4j1.1", identical: 46, inconsistent: 5 },
    PublishedPair { older: "xalan2.4", newer: "xalan2.6", identical: 233, inconsistent: 68 },
    PublishedPair { older: "log4j1.0", newer: "log4j1.2", identical: 7, inconsistent: 42 },
    PublishedPair { older: "xalan2.4", newer: "xalan2.7", identical: 22, inconsistent: 95 },
    PublishedPair { older: "log4j1.1", newer: "log4j1.2", identical: 5, inconsistent: 42 },
    PublishedPair { older: "xalan2.5", newer: "xalan2.6", identical: 417, inconsistent: 204 },
    PublishedPair { older: "lucene2.0", newer: "lucene2.2", identical: 40, inconsistent: 24 },
    PublishedPair { older: "xalan2.5", newer: "xalan2.7", identical: 93, inconsistent: 169 },
    PublishedPair { older: "lucene2.0", newer: "lucene2.4", identical: 12, inconsistent: 8 },
    PublishedPair { older: "xalan2.6", newer: "xalan2.7", identical: 107, inconsistent: 664 },
    PublishedPair { older: "lucene2.2", newer: "lucene2.4", identical: 30, inconsistent: 26 },
    PublishedPair { older: "xerces1.2", newer: "xerces1.3", identical: 871, inconsistent: 112 },
    PublishedPair { older: "poi1.5", newer: "poi2.0", identical: 93, inconsistent: 36 },
    PublishedPair { older: "xerces1.2", newer: "xerces1.4", identical: 347, inconsistent: 592 },
    PublishedPair { older: "poi1.5", newer: "poi2.5", identical: 92, inconsistent: 37 },
    PublishedPair { older: "xerces1.2", newer: "xercesinit", identical: 50, inconsistent: 49 },
    PublishedPair { older: "poi1.5", newer: "poi3.0", identical: 41, inconsistent: 23 },
    PublishedPair { older: "xerces1.3", newer: "xerces1.4", identical: 435, inconsistent: 516 },
    PublishedPair { older: "poi2.0", newer: "poi2.5", identical: 117, inconsistent: 266 },
    PublishedPair { older: "xerces1.3", newer: "xercesinit", identical: 17, inconsistent: 80 },
    PublishedPair { older: "poi2.0", newer: "poi3.0", identical: 68, inconsistent: 26 },
    PublishedPair { older: "xerces1.4", newer: "xercesinit", identical: 14, inconsistent: 81 },
    PublishedPair { older: "poi2.5", newer: "poi3.0", identical: 68, inconsistent: 47 },
];

pub fn dataset(name: &str) -> Option<&'static PublishedDataset> {
    DATASETS.iter().find(|d| d.name == name)
}

pub fn pair(older: &str, newer: &str) -> Option<&'static PublishedPair> {
    PAIRS.iter().find(|p| p.older == older && p.newer == newer)
}
