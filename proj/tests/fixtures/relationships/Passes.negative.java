class Calc {
    void run(int input) {
        show(input);
    }

    void display(int shown) {
    }
}
