class Base {
}

class Derived extends Base {
}
