interface Shape {
}

class Circle implements Shape {
}
