#pragma once

#include "nonlocality/codes/alist.hpp"
#include "nonlocality/codes/binary_matrix.hpp"
#include "nonlocality/codes/code_file.hpp"
#include "nonlocality/codes/stabilizer_code.hpp"
#include "nonlocality/embeddings/audit.hpp"
#include "nonlocality/embeddings/embedding.hpp"
#include "nonlocality/error.hpp"
#include "nonlocality/graphs/density.hpp"
#include "nonlocality/graphs/expansion.hpp"
#include "nonlocality/graphs/generators.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/profile.hpp"
#include "nonlocality/graphs/robustness.hpp"
#include "nonlocality/graphs/separators.hpp"
#include "nonlocality/graphs/spectral.hpp"
#include "nonlocality/io/report.hpp"
#include "nonlocality/io/scaling.hpp"
#include "nonlocality/rng.hpp"
#include "nonlocality/stacked/stacked.hpp"
