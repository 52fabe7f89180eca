#pragma once

#include <string>
#include <vector>

namespace circv::testsupport {

/// Expression corpus for the AD-vs-finite-difference and round-trip
/// properties. Every expression is well defined on the box [-0.4, 0.4]^3
/// (log/sqrt arguments are shifted to stay positive there).
inline const std::vector<std::string>& expression_corpus() {
  static const std::vector<std::string> corpus = {
      "x1",
      "x2",
      "x3",
      "5",
      "pi",
      "e",
      "x1 + x2 + x3",
      "x1 - x2 + 2*x3",
      "x1*x2",
      "x1*x2*x3",
      "x1/(x2 + 2)",
      "-x1^2",
      "x1^2 + x2^2 + x3^2",
      "x1^3",
      "x1^4 - 2*x1^2 + 1",
      "(x1 + x2)^2",
      "(x1 - x2)*(x1 + x2)",
      "2^x1",
      "x1^-2 + 3",
      "(x1 + 2)^(x2 + 1)",
      "(x1 + 3)^0.5",
      "exp(x1)",
      "exp(-x1^2)",
      "exp(x1 + x2 + x3)",
      "exp(x1*x2)",
      "log(x1 + 2)",
      "log(exp(x1) + 1)",
      "log((x1 + 2)*(x2 + 3))",
      "sin(x1)",
      "sin(x1*x2)",
      "sin(x1 + x2) - sin(x1) - sin(x2)",
      "cos(x1 - x2)",
      "cos(x1)^2 + sin(x1)^2",
      "tan(x1/2)",
      "tan(x1*x2/4)",
      "sqrt(x1 + 2)",
      "sqrt(x1^2 + x2^2 + 1)",
      "sqrt(2 + x1)*sqrt(3 + x2)",
      "1/(x1 + x2 + x3 + 5)^2",
      "1/(1 + exp(-x1))",
      "x1*exp(x2) + x2*exp(x1)",
      "sin(cos(x1))",
      "exp(sin(x1) + cos(x2))",
      "log(2 + sin(x1))",
      "x1^2*sin(x2) - x3/(2 + cos(x1))",
      "(1 + x1^2)/(1 + x2^2)",
      "0.1*sin(x1 - x2) + (1 + 0.1*(x1 + x2 + x3)^2)",
      "(3 + 0.5*(x1 + x2 + x3)/sqrt(3))^2 - 2",
      "pi*x1 + e*x2",
      "sqrt(3)/sqrt(2 + x3)",
      "-(x1 + x2)^3/4",
      "2*x1^2 - 3*x1*x2 + x2^2 - x3 + 0.5",
      "exp(x1)^2",
      "sin(2*pi*x1/3)",
  };
  return corpus;
}

}  // namespace circv::testsupport
