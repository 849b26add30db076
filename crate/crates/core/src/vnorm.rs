pub struct ModularValue;
