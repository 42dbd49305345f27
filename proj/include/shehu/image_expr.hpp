#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "shehu/expr.hpp"
#include "shehu/rational_function.hpp"

namespace shehu {

/// Symbols of the image side: s, u, and w (the Yang variable, also "omega").
enum class ImageSym { S, U, W };
enum class ImageFn { Exp, Sqrt, Log, Atan };

class ImageExpr;

struct ImageNode {
    enum class Kind { Num, Sym, Add, Mul, Div, Pow, Fn };
    Kind kind = Kind::Num;
    Coeff value;
    ImageSym sym = ImageSym::S;
    ImageFn fn = ImageFn::Exp;
    int exponent = 0;
    std::vector<ImageExpr> children;  // Div: {num, den}; Pow, Fn: {arg}
};

/// Closed-form image in s and u, as printed in transform tables.
class ImageExpr {
public:
    ImageExpr();  // zero

    static ImageExpr num(const Coeff& c);
    static ImageExpr sym(ImageSym s);
    static ImageExpr add(std::vector<ImageExpr> terms);
    static ImageExpr mul(std::vector<ImageExpr> factors);
    static ImageExpr div(const ImageExpr& a, const ImageExpr& b);
    static ImageExpr pow(const ImageExpr& base, int k);
    static ImageExpr fn(ImageFn f, const ImageExpr& arg);
    static ImageExpr neg(const ImageExpr& a);

    const ImageNode& node() const { return *node_; }
    ImageNode::Kind kind() const { return node_->kind; }
    bool is_num() const { return kind() == ImageNode::Kind::Num; }
    bool uses(ImageSym s) const;
    bool has_functions() const;

private:
    explicit ImageExpr(std::shared_ptr<const ImageNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ImageNode> node_;
};

ImageExpr parse_image(std::string_view text, const ConstantBindings& constants = {});
std::string format(const ImageExpr& e);

/// Principal-branch complex evaluation; w takes the value of u.
Complex evaluate(const ImageExpr& e, Complex s, Complex u);

/// u^u_power * f(s/u)
struct HomogeneousForm {
    int u_power = 0;
    RationalFunction f;
};

/// Exact homogenization of a rational image. Raises NotHomogeneous when the
/// image cannot be written as u^k f(s/u), NonRationalImage for exp/sqrt/log/atan.
HomogeneousForm homogeneous_form(const ImageExpr& e);
/// Exact rational function in one symbol; any other symbol raises InvalidArgument.
RationalFunction univariate_form(const ImageExpr& e, ImageSym var);

}  // namespace shehu
