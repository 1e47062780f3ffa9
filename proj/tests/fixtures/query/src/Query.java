package search;

public class Query {
    private String text;

    public String getText() {
        return text;
    }
}
