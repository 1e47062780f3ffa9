class Calc {
    void run(int input) {
        int result = value;
    }
}
