#pragma once

#include "ruusc/ext_real.hpp"
#include "ruusc/oracle.hpp"
#include "ruusc/sampling.hpp"

#include <string>
#include <vector>

namespace ruusc {

/// Extended-real values on a uniform grid over a box (1-D or 2-D), with
/// multilinear interpolation between nodes. Off-node queries are flagged so
/// verifiers can restrict themselves to exact nodes. Queries outside the box
/// are +inf.
class TabulatedFunction {
 public:
  TabulatedFunction(Box box, std::vector<int> res, std::vector<ExtReal> values,
                    std::string name = "tabulated");

  struct Value {
    ExtReal v;
    bool interpolated = false;
  };

  Value at(const Vec& x) const;

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<int>& resolution() const { return res_; }
  const std::vector<ExtReal>& values() const { return values_; }

  Vec node(long flat_index) const;
  long node_count() const { return static_cast<long>(values_.size()); }

  /// All grid nodes as a sample set.
  SampleSet nodes() const;

  /// Oracle view; eval returns the interpolated value.
  FunctionOracle as_oracle(FunctionOracle::Traits traits = {}) const;

 private:
  Box box_;
  std::vector<int> res_;
  std::vector<ExtReal> values_;
  std::string name_;
  std::vector<double> h_;  // grid spacing per axis
};

}  // namespace ruusc
